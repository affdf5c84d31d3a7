//! Domain types: decorated generalized parabolic bundle models and their
//! finite subobject catalogs.
//!
//! A model is the numerical avatar of a triple `(E, q, φ)`: a vector bundle
//! of rank `r` and degree `d` on the normalization of a nodal curve, a
//! parabolic structure `q: E_{x1} ⊕ E_{x2} → R`, and a decoration
//! `φ: (E^{⊗a})^{⊕b} ⊗ (det E)^{⊗-c} → L`. Subsheaves enter only through
//! their numerical types (rank, degree, parabolic quotient dimension),
//! collected in a finite partially ordered catalog together with a profile
//! recording where the decoration survives on tensor powers.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::rational::Q;

/// Decoration type `(a, b, c)` together with the degrees of the target line
/// bundle `L` and of the fixed determinant `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecorationType {
    /// Tensor power, `a >= 1`.
    pub a: u32,
    /// Direct-sum multiplicity, `b >= 1`.
    pub b: u32,
    /// Determinant twist exponent.
    pub c: u32,
    /// Degree of the target line bundle `L`.
    pub deg_l: i64,
    /// Degree of the fixed determinant `D`.
    pub deg_d: i64,
}

impl DecorationType {
    pub fn new(a: u32, b: u32, c: u32, deg_l: i64, deg_d: i64) -> Self {
        DecorationType {
            a,
            b,
            c,
            deg_l,
            deg_d,
        }
    }

    /// Effective degree of the target of `φ: E_{a,b} → L ⊗ D^{⊗c}`.
    pub fn target_degree(&self) -> i64 {
        self.deg_l + i64::from(self.c) * self.deg_d
    }

    fn validate(&self) -> Result<(), Error> {
        if self.a == 0 {
            return Err(Error::validation("decoration: a must be >= 1"));
        }
        if self.b == 0 {
            return Err(Error::validation("decoration: b must be >= 1"));
        }
        Ok(())
    }
}

/// Numerical avatar of a saturated subsheaf of the model bundle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubobjectDescriptor {
    /// Opaque identifier, unique within a catalog. `"0"` and `"E"` are
    /// reserved for the zero subobject and the full bundle.
    pub id: String,
    pub rank: u32,
    pub degree: i64,
    /// `dim q(F_{x1} ⊕ F_{x2})`.
    pub qdim: u32,
    /// This chain step belongs to a β-filtration.
    #[serde(default)]
    pub beta_flag: bool,
    /// This chain step is invariant under the Higgs field.
    #[serde(default)]
    pub higgs_flag: bool,
}

impl SubobjectDescriptor {
    pub fn new(id: &str, rank: u32, degree: i64, qdim: u32) -> Self {
        SubobjectDescriptor {
            id: id.to_string(),
            rank,
            degree,
            qdim,
            beta_flag: false,
            higgs_flag: false,
        }
    }

    /// Sort key giving the deterministic catalog order (and hence witness
    /// tie-breaking): rank, then degree, then qdim, then id.
    fn sort_key(&self) -> (u32, i64, u32, String) {
        (self.rank, self.degree, self.qdim, self.id.clone())
    }
}

/// Index of a subobject inside a model's catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubIdx(pub usize);

/// A strictly increasing chain of proper subobjects with positive rational
/// weights — the test object for every semistability notion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedFiltration {
    pub steps: Vec<SubIdx>,
    pub weights: Vec<Q>,
}

impl WeightedFiltration {
    pub fn new(steps: Vec<SubIdx>, weights: Vec<Q>) -> Self {
        WeightedFiltration { steps, weights }
    }

    pub fn empty() -> Self {
        WeightedFiltration {
            steps: Vec::new(),
            weights: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The same chain with every weight multiplied by `factor`.
    pub fn scaled(&self, factor: Q) -> Self {
        WeightedFiltration {
            steps: self.steps.clone(),
            weights: self.weights.iter().map(|w| w * factor).collect(),
        }
    }
}

/// Where the decoration survives on tensor powers, by subobject ids.
///
/// The default encoding is a monotone level map `κ: catalog → {0..a}`
/// (`κ(F) = k_φ(F, E)`, the largest number of `F`-slots in a tensor tuple on
/// which `φ` does not vanish). Arbitrary up-closed tuple patterns are
/// accepted as an expert input; additivity is then checked, not assumed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ProfileData {
    Kappa {
        /// Levels for the proper subobjects; `0` and `E` are implied.
        kappa: BTreeMap<String, u32>,
        global_epsilon: bool,
    },
    Explicit {
        /// Up-closed set of `a`-tuples of catalog ids on which `φ` is nonzero.
        admissible: BTreeSet<Vec<String>>,
        global_epsilon: bool,
    },
}

impl ProfileData {
    pub fn kappa(pairs: &[(&str, u32)], global_epsilon: bool) -> Self {
        ProfileData::Kappa {
            kappa: pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            global_epsilon,
        }
    }

    pub fn global_epsilon(&self) -> bool {
        match self {
            ProfileData::Kappa { global_epsilon, .. } => *global_epsilon,
            ProfileData::Explicit { global_epsilon, .. } => *global_epsilon,
        }
    }
}

/// Index-based profile compiled into a model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum ProfileKind {
    Kappa,
    /// Admissible tuples as sorted catalog-index vectors.
    Explicit(BTreeSet<Vec<usize>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Profile {
    /// `k_φ(F, E)` per catalog index (derived for explicit patterns).
    pub kappa: Vec<u32>,
    pub kind: ProfileKind,
    pub global_epsilon: bool,
}

/// Construction input for [`BundleModel`]; mirrors the JSON document shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleData {
    pub rank: u32,
    pub degree: i64,
    pub genus: u32,
    pub dim_r: u32,
    pub deco: DecorationType,
    /// Proper subobjects only; the zero object and `E` are synthesized.
    pub subobjects: Vec<SubobjectDescriptor>,
    /// Strict containments `F < G` among proper subobject ids. Containments
    /// involving `0` and `E` are implied.
    pub relations: Vec<(String, String)>,
    pub profile: ProfileData,
}

/// A validated model: bundle invariants, finite subobject catalog with its
/// partial order, and the compiled decoration profile.
///
/// Values are immutable after construction; every operation over them is a
/// pure function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleModel {
    rank: u32,
    degree: i64,
    genus: u32,
    dim_r: u32,
    deco: DecorationType,
    /// Sorted catalog; index 0 is the zero object, the last index is `E`.
    catalog: Vec<SubobjectDescriptor>,
    /// Reflexive-transitive containment, `leq[i][j]` meaning `i ⊆ j`.
    leq: Vec<Vec<bool>>,
    profile: Profile,
}

pub const ZERO_ID: &str = "0";
pub const FULL_ID: &str = "E";

impl BundleModel {
    pub fn new(data: BundleData) -> Result<Self, Error> {
        if data.rank == 0 {
            return Err(Error::validation("bundle: rank must be >= 1"));
        }
        if data.dim_r > 2 * data.rank {
            return Err(Error::validation(format!(
                "bundle: dim_r = {} exceeds 2*rank = {}",
                data.dim_r,
                2 * data.rank
            )));
        }
        data.deco.validate()?;

        let mut catalog = Vec::with_capacity(data.subobjects.len() + 2);
        catalog.push(SubobjectDescriptor::new(ZERO_ID, 0, 0, 0));
        for sub in &data.subobjects {
            if sub.id == ZERO_ID || sub.id == FULL_ID {
                return Err(Error::validation(format!(
                    "catalog: id {:?} is reserved",
                    sub.id
                )));
            }
            if sub.rank == 0 || sub.rank >= data.rank {
                return Err(Error::validation(format!(
                    "catalog {}: proper subobject rank must lie in 1..={}",
                    sub.id,
                    data.rank - 1
                )));
            }
            if sub.qdim > sub.rank * 2 || sub.qdim > data.dim_r {
                return Err(Error::validation(format!(
                    "catalog {}: qdim = {} exceeds min(2*rank, dim_r) = {}",
                    sub.id,
                    sub.qdim,
                    (2 * sub.rank).min(data.dim_r)
                )));
            }
            // The quotient E/F must itself admit a parabolic quotient:
            // dim_r - qdim(F) <= 2*(r - rk F).
            if i64::from(data.dim_r) - i64::from(sub.qdim)
                > 2 * (i64::from(data.rank) - i64::from(sub.rank))
            {
                return Err(Error::validation(format!(
                    "catalog {}: qdim = {} too small, quotient would need \
                     dim > 2*rank",
                    sub.id, sub.qdim
                )));
            }
            catalog.push(sub.clone());
        }
        catalog.push(SubobjectDescriptor::new(
            FULL_ID,
            data.rank,
            data.degree,
            data.dim_r,
        ));
        catalog.sort_by_key(|s| s.sort_key());

        let n = catalog.len();
        let mut index_of = BTreeMap::new();
        for (i, sub) in catalog.iter().enumerate() {
            if index_of.insert(sub.id.clone(), i).is_some() {
                return Err(Error::validation(format!(
                    "catalog: duplicate id {:?}",
                    sub.id
                )));
            }
        }
        let zero = 0usize;
        let full = n - 1;

        // Containment: reflexive, everything between 0 and E, plus the
        // declared pairs, then the transitive closure.
        let mut leq = vec![vec![false; n]; n];
        for i in 0..n {
            leq[i][i] = true;
            leq[zero][i] = true;
            leq[i][full] = true;
        }
        for (f, g) in &data.relations {
            let &fi = index_of
                .get(f)
                .ok_or_else(|| Error::validation(format!("relations: unknown id {f:?}")))?;
            let &gi = index_of
                .get(g)
                .ok_or_else(|| Error::validation(format!("relations: unknown id {g:?}")))?;
            if fi == gi || catalog[fi].rank >= catalog[gi].rank {
                return Err(Error::validation(format!(
                    "relations: {f:?} < {g:?} requires strictly increasing rank"
                )));
            }
            leq[fi][gi] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i][j] {
                    let (fi, gi) = (&catalog[i], &catalog[j]);
                    if fi.rank >= gi.rank {
                        return Err(Error::validation(format!(
                            "catalog order: {} < {} but ranks do not increase",
                            fi.id, gi.id
                        )));
                    }
                    if fi.qdim > gi.qdim {
                        return Err(Error::validation(format!(
                            "catalog order: {} < {} but qdim decreases",
                            fi.id, gi.id
                        )));
                    }
                    if gi.qdim - fi.qdim > 2 * (gi.rank - fi.rank) {
                        return Err(Error::validation(format!(
                            "catalog order: {} < {}: qdim jump exceeds twice the rank jump",
                            fi.id, gi.id
                        )));
                    }
                }
            }
        }

        let profile = compile_profile(&data.profile, &catalog, &leq, &index_of, data.deco.a)?;

        Ok(BundleModel {
            rank: data.rank,
            degree: data.degree,
            genus: data.genus,
            dim_r: data.dim_r,
            deco: data.deco,
            catalog,
            leq,
            profile,
        })
    }

    /// The same bundle and catalog with another decoration and profile; used
    /// for the second decoration of a 2-dgpb and for Segre combinations.
    pub fn with_decoration(
        &self,
        deco: DecorationType,
        profile: &ProfileData,
    ) -> Result<Self, Error> {
        deco.validate()?;
        let index_of: BTreeMap<String, usize> = self
            .catalog
            .iter()
            .enumerate()
            .map(|(i, s)| (s.id.clone(), i))
            .collect();
        let compiled = compile_profile(profile, &self.catalog, &self.leq, &index_of, deco.a)?;
        let mut model = self.clone();
        model.deco = deco;
        model.profile = compiled;
        Ok(model)
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn dim_r(&self) -> u32 {
        self.dim_r
    }

    pub fn deco(&self) -> &DecorationType {
        &self.deco
    }

    pub fn global_epsilon(&self) -> bool {
        self.profile.global_epsilon
    }

    pub fn catalog_len(&self) -> usize {
        self.catalog.len()
    }

    pub fn zero(&self) -> SubIdx {
        SubIdx(0)
    }

    pub fn full(&self) -> SubIdx {
        SubIdx(self.catalog.len() - 1)
    }

    pub fn sub(&self, idx: SubIdx) -> &SubobjectDescriptor {
        &self.catalog[idx.0]
    }

    pub fn idx(&self, id: &str) -> Option<SubIdx> {
        self.catalog.iter().position(|s| s.id == id).map(SubIdx)
    }

    /// All catalog indices in the deterministic order.
    pub fn all(&self) -> impl Iterator<Item = SubIdx> {
        (0..self.catalog.len()).map(SubIdx)
    }

    /// Proper nonzero subobjects, in the deterministic order.
    pub fn proper(&self) -> impl Iterator<Item = SubIdx> + '_ {
        (1..self.catalog.len() - 1).map(SubIdx)
    }

    pub fn leq(&self, f: SubIdx, g: SubIdx) -> bool {
        self.leq[f.0][g.0]
    }

    pub fn lt(&self, f: SubIdx, g: SubIdx) -> bool {
        f != g && self.leq[f.0][g.0]
    }

    /// `k_φ(F, E)`: the profile level of a subobject.
    pub fn kappa(&self, f: SubIdx) -> u32 {
        self.profile.kappa[f.0]
    }

    /// `ε(φ|_F)`: whether the decoration survives on `F^{⊗a}`, i.e.
    /// `κ(F) = a`.
    pub fn eps_restricted(&self, f: SubIdx) -> bool {
        self.profile.kappa[f.0] == self.deco.a
    }

    pub(crate) fn is_kappa_profile(&self) -> bool {
        matches!(self.profile.kind, ProfileKind::Kappa)
    }

    /// Is the tensor tuple admissible for the chain `steps ⊂ E`?
    ///
    /// `blocks[l]` names the filtration block of slot `l`: block `j < s`
    /// is `steps[j]`, block `s` is `E` itself.
    pub(crate) fn tuple_admissible(&self, steps: &[SubIdx], blocks: &[usize]) -> bool {
        debug_assert_eq!(blocks.len(), self.deco.a as usize);
        match &self.profile.kind {
            ProfileKind::Kappa => {
                if !self.profile.global_epsilon {
                    return false;
                }
                for (j, &step) in steps.iter().enumerate() {
                    let count = blocks.iter().filter(|&&b| b <= j).count() as u32;
                    if count > self.profile.kappa[step.0] {
                        return false;
                    }
                }
                true
            }
            ProfileKind::Explicit(set) => {
                let tuple: Vec<usize> = blocks
                    .iter()
                    .map(|&b| {
                        if b < steps.len() {
                            steps[b].0
                        } else {
                            self.full().0
                        }
                    })
                    .collect();
                set.contains(&tuple)
            }
        }
    }

    /// Is a tensor tuple of nonzero catalog entries admissible, with no
    /// chain context? For κ-profiles every catalog element `F` bounds the
    /// number of slots contained in `F` by `κ(F)`; explicit profiles answer
    /// by membership.
    pub(crate) fn tuple_admissible_catalog(&self, tuple: &[usize]) -> bool {
        match &self.profile.kind {
            ProfileKind::Kappa => {
                if !self.profile.global_epsilon {
                    return false;
                }
                (0..self.catalog.len()).all(|f| {
                    let count = tuple.iter().filter(|&&g| self.leq[g][f]).count() as u32;
                    count <= self.profile.kappa[f]
                })
            }
            ProfileKind::Explicit(set) => set.contains(tuple),
        }
    }

    /// Checks that a filtration is a strictly increasing chain of proper
    /// subobjects with positive weights.
    pub fn validate_filtration(&self, filt: &WeightedFiltration) -> Result<(), Error> {
        if filt.steps.len() != filt.weights.len() {
            return Err(Error::validation(
                "filtration: steps and weights differ in length",
            ));
        }
        for &step in &filt.steps {
            if step.0 >= self.catalog.len() {
                return Err(Error::validation("filtration: step index out of range"));
            }
            if step == self.zero() || step == self.full() {
                return Err(Error::validation(
                    "filtration: steps must be proper nonzero subobjects",
                ));
            }
        }
        for pair in filt.steps.windows(2) {
            if !self.lt(pair[0], pair[1]) {
                return Err(Error::validation(format!(
                    "filtration: {} < {} does not hold in the catalog",
                    self.sub(pair[0]).id,
                    self.sub(pair[1]).id
                )));
            }
        }
        for w in &filt.weights {
            if *w <= Q::from_integer(0) {
                return Err(Error::validation("filtration: weights must be positive"));
            }
        }
        Ok(())
    }

    /// One-line description used in reports.
    pub fn brief(&self) -> String {
        let subs: Vec<String> = self
            .proper()
            .map(|i| {
                let s = self.sub(i);
                format!(
                    "{}({},{},{};k{})",
                    s.id,
                    s.rank,
                    s.degree,
                    s.qdim,
                    self.kappa(i)
                )
            })
            .collect();
        format!(
            "r{} d{} g{} R{} a{} e{} [{}]",
            self.rank,
            self.degree,
            self.genus,
            self.dim_r,
            self.deco.a,
            u8::from(self.profile.global_epsilon),
            subs.join(" ")
        )
    }
}

fn compile_profile(
    data: &ProfileData,
    catalog: &[SubobjectDescriptor],
    leq: &[Vec<bool>],
    index_of: &BTreeMap<String, usize>,
    a: u32,
) -> Result<Profile, Error> {
    let n = catalog.len();
    let full = n - 1;
    match data {
        ProfileData::Kappa {
            kappa,
            global_epsilon,
        } => {
            let mut levels = vec![0u32; n];
            levels[full] = if *global_epsilon { a } else { 0 };
            for (id, &level) in kappa {
                let &i = index_of
                    .get(id)
                    .ok_or_else(|| Error::validation(format!("profile: unknown id {id:?}")))?;
                if i == 0 {
                    if level != 0 {
                        return Err(Error::validation("profile: kappa(0) must be 0"));
                    }
                    continue;
                }
                if i == full {
                    if level != levels[full] {
                        return Err(Error::validation(format!(
                            "profile: kappa(E) must be {} here",
                            levels[full]
                        )));
                    }
                    continue;
                }
                if level > a {
                    return Err(Error::validation(format!(
                        "profile: kappa({id}) = {level} exceeds a = {a}"
                    )));
                }
                if !*global_epsilon && level != 0 {
                    return Err(Error::validation(
                        "profile: kappa must vanish when the decoration is zero",
                    ));
                }
                levels[i] = level;
            }
            for (i, sub) in catalog.iter().enumerate() {
                if i != 0 && i != full && !kappa.contains_key(&sub.id) {
                    return Err(Error::validation(format!(
                        "profile: missing kappa entry for {:?}",
                        sub.id
                    )));
                }
            }
            for i in 0..n {
                for j in 0..n {
                    if i != j && leq[i][j] && levels[i] > levels[j] {
                        return Err(Error::validation(format!(
                            "profile: kappa not monotone on {} < {}",
                            catalog[i].id, catalog[j].id
                        )));
                    }
                }
            }
            Ok(Profile {
                kappa: levels,
                kind: ProfileKind::Kappa,
                global_epsilon: *global_epsilon,
            })
        }
        ProfileData::Explicit {
            admissible,
            global_epsilon,
        } => {
            let mut set: BTreeSet<Vec<usize>> = BTreeSet::new();
            for tuple in admissible {
                if tuple.len() != a as usize {
                    return Err(Error::validation(format!(
                        "profile: tuple length {} does not match a = {a}",
                        tuple.len()
                    )));
                }
                let indices: Vec<usize> = tuple
                    .iter()
                    .map(|id| {
                        index_of
                            .get(id)
                            .copied()
                            .ok_or_else(|| Error::validation(format!("profile: unknown id {id:?}")))
                    })
                    .collect::<Result<_, _>>()?;
                if indices.contains(&0) {
                    return Err(Error::validation(
                        "profile: tuples may not involve the zero subobject",
                    ));
                }
                set.insert(indices);
            }
            if set.is_empty() != !*global_epsilon {
                return Err(Error::validation(
                    "profile: global_epsilon must match non-emptiness of the pattern",
                ));
            }
            // Up-closedness: bumping any single slot upward stays inside.
            for tuple in &set {
                for (pos, &entry) in tuple.iter().enumerate() {
                    for higher in 0..n {
                        if higher != entry && leq[entry][higher] {
                            let mut bumped = tuple.clone();
                            bumped[pos] = higher;
                            if !set.contains(&bumped) {
                                return Err(Error::validation(format!(
                                    "profile: pattern not up-closed at slot {pos} of {:?}",
                                    tuple
                                        .iter()
                                        .map(|&i| catalog[i].id.clone())
                                        .collect::<Vec<_>>()
                                )));
                            }
                        }
                    }
                }
            }
            // Derive kappa = k_φ(F, E) from the pattern: the largest number
            // of F-slots among admissible {F, E}-tuples.
            let mut levels = vec![0u32; n];
            levels[full] = if *global_epsilon { a } else { 0 };
            for i in 1..full {
                let mut best = 0u32;
                for mask in 0u32..(1 << a) {
                    let tuple: Vec<usize> = (0..a)
                        .map(|slot| if mask & (1 << slot) != 0 { i } else { full })
                        .collect();
                    if set.contains(&tuple) {
                        best = best.max(mask.count_ones());
                    }
                }
                levels[i] = best;
            }
            Ok(Profile {
                kappa: levels,
                kind: ProfileKind::Explicit(set),
                global_epsilon: *global_epsilon,
            })
        }
    }
}
