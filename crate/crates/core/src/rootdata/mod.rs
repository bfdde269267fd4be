//! Based root data with a finite-order automorphism.
//!
//! A [`RootDatum`] carries character and cocharacter lattices of equal rank, a
//! perfect pairing between them, simple roots/coroots, the full (finite) root
//! system generated by reflections, and a lattice automorphism `sigma` that
//! permutes the simple roots. The automorphism is given on the cocharacter
//! side; its character-side companion is derived from the pairing and checked
//! to be integral.
//!
//! On top of the datum live the Weyl-group utilities (elements carry both an
//! exact matrix and a word in simple reflections as certificate), dominance
//! tests, coroot-lattice norms, closed symmetric closures of root subsets, and
//! the orthogonal decomposition of a difference of conjugate minuscule
//! cocharacters into pairwise orthogonal coroots.

pub mod presets;

use crate::error::{Error, Result};
use crate::linalg::{self, IMat};
use crate::{Int, Rat};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::sync::Mutex;

const MAX_ROOTS: usize = 4000;
const MAX_SIGMA_ORDER: usize = 48;

/// A single root with its coroot and bookkeeping data.
#[derive(Clone, Debug)]
pub struct Root {
    pub ch: Vec<Int>,
    pub cov: Vec<Int>,
    pub positive: bool,
    /// Integral coefficients over the simple roots (all of one sign).
    pub expansion: Vec<Int>,
    pub height: Int,
}

impl Root {
    /// Simple-root indices appearing in the expansion.
    pub fn support(&self) -> BTreeSet<usize> {
        self.expansion
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect()
    }
}

/// Standard Levi subgroup, identified with a set of simple-root indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LeviSubset(pub BTreeSet<usize>);

impl LeviSubset {
    pub fn torus() -> Self {
        LeviSubset(BTreeSet::new())
    }

    pub fn from_indices(idx: &[usize]) -> Self {
        LeviSubset(idx.iter().copied().collect())
    }

    pub fn full(n_simple: usize) -> Self {
        LeviSubset((0..n_simple).collect())
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(&i)
    }

    pub fn is_subset(&self, other: &LeviSubset) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn indices(&self) -> Vec<usize> {
        self.0.iter().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn union(&self, other: &LeviSubset) -> LeviSubset {
        LeviSubset(self.0.union(&other.0).copied().collect())
    }
}

/// Weyl-group element: exact matrices on both lattices plus a word in simple
/// reflections as certificate. Equality and hashing use the cocharacter matrix.
#[derive(Clone, Debug)]
pub struct WeylElement {
    pub mat: IMat,
    pub mat_ch: IMat,
    pub word: Vec<usize>,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.mat == other.mat
    }
}
impl Eq for WeylElement {}
impl std::hash::Hash for WeylElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.mat.hash(state);
    }
}

impl WeylElement {
    pub fn act_cov(&self, v: &[Int]) -> Vec<Int> {
        self.mat.mul_vec(v)
    }

    pub fn act_cov_rat(&self, v: &[Rat]) -> Vec<Rat> {
        self.mat.mul_vec_rat(v)
    }

    pub fn act_ch(&self, v: &[Int]) -> Vec<Int> {
        self.mat_ch.mul_vec(v)
    }

    pub fn is_identity(&self) -> bool {
        self.mat.is_identity()
    }
}

/// Input description of a root datum: either a named preset or explicit data.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DatumSpec {
    Preset {
        preset: String,
        #[serde(default)]
        params: BTreeMap<String, i64>,
    },
    Explicit {
        #[serde(default)]
        name: Option<String>,
        simple_roots: Vec<Vec<i64>>,
        simple_coroots: Vec<Vec<i64>>,
        sigma: Vec<Vec<i64>>,
        #[serde(default)]
        pairing: Option<Vec<Vec<i64>>>,
    },
}

/// Build a root datum from a [`DatumSpec`].
pub fn build_root_datum(spec: &DatumSpec) -> Result<RootDatum> {
    match spec {
        DatumSpec::Preset { preset, params } => presets::preset(preset, params),
        DatumSpec::Explicit { name, simple_roots, simple_coroots, sigma, pairing } => {
            let rank = sigma.len();
            let to_mat = |rows: &Vec<Vec<i64>>| {
                IMat::from_rows(
                    rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect(),
                )
            };
            let p = match pairing {
                Some(rows) => to_mat(rows),
                None => IMat::identity(rank),
            };
            RootDatum::build(
                name.clone().unwrap_or_else(|| "explicit".into()),
                simple_roots.iter().map(|r| crate::ivec(r)).collect(),
                simple_coroots.iter().map(|r| crate::ivec(r)).collect(),
                p,
                to_mat(sigma),
            )
        }
    }
}

/// Based root datum with automorphism.
#[derive(Debug)]
pub struct RootDatum {
    pub name: String,
    pub rank: usize,
    /// Pairing matrix: pairing(ch, cov) = ch^T * P * cov.
    pub pairing_mat: IMat,
    /// Simple roots (character vectors).
    pub simple_ch: Vec<Vec<Int>>,
    /// Simple coroots (cocharacter vectors).
    pub simple_cov: Vec<Vec<Int>>,
    /// All roots; positive roots first (by height then lex), then negatives in
    /// the same order, so `id` and `id + n_positive` are opposite roots.
    pub roots: Vec<Root>,
    pub n_positive: usize,
    /// Automorphism on the cocharacter lattice.
    pub sigma: IMat,
    /// Derived automorphism on the character lattice.
    pub sigma_ch: IMat,
    pub sigma_order: usize,
    /// sigma maps simple root i to simple root perm[i].
    pub simple_perm: Vec<usize>,
    root_by_ch: HashMap<Vec<Int>, usize>,
    root_by_cov: HashMap<Vec<Int>, usize>,
    weyl_cache: Mutex<HashMap<LeviSubset, std::sync::Arc<Vec<WeylElement>>>>,
}

impl RootDatum {
    pub fn build(
        name: String,
        simple_ch: Vec<Vec<Int>>,
        simple_cov: Vec<Vec<Int>>,
        pairing_mat: IMat,
        sigma: IMat,
    ) -> Result<RootDatum> {
        let rank = sigma.rows;
        if sigma.cols != rank {
            return Err(Error::InvalidDatum("sigma must be square".into()));
        }
        if pairing_mat.rows != rank || pairing_mat.cols != rank {
            return Err(Error::InvalidDatum("pairing must be square of full rank".into()));
        }
        if simple_ch.len() != simple_cov.len() {
            return Err(Error::InvalidDatum("simple roots and coroots must match up".into()));
        }
        let s = simple_ch.len();
        if simple_ch.iter().any(|v| v.len() != rank) || simple_cov.iter().any(|v| v.len() != rank)
        {
            return Err(Error::InvalidDatum("simple root/coroot of wrong dimension".into()));
        }

        // pairing must be invertible over Q
        let p_inv = rat_inverse(&pairing_mat)
            .ok_or_else(|| Error::InvalidDatum("pairing matrix is singular".into()))?;

        // sigma must be a lattice automorphism
        let sigma_inv = sigma
            .inverse_unimodular()
            .ok_or_else(|| Error::InvalidDatum("sigma is not a lattice automorphism".into()))?;

        // character-side automorphism A with A^T P S = P, i.e. A = (P S^-1 P^-1)^T
        let m = rat_mat_mul(&rat_mat_mul(&to_rat_mat(&pairing_mat), &to_rat_mat(&sigma_inv)), &p_inv);
        let sigma_ch = rat_mat_transpose_to_int(&m).ok_or_else(|| {
            Error::InvalidDatum("sigma does not act integrally on the character lattice".into())
        })?;

        let pairing = |ch: &[Int], cov: &[Int]| -> Int {
            let pv = pairing_mat.mul_vec(cov);
            ch.iter().zip(&pv).map(|(a, b)| a * b).sum()
        };

        // Cartan conditions
        let mut cartan = IMat::zero(s, s);
        for i in 0..s {
            for j in 0..s {
                let c = pairing(&simple_ch[i], &simple_cov[j]);
                if i == j && c != Int::from(2) {
                    return Err(Error::InvalidDatum(format!(
                        "<alpha_{i}, alpha_{i}^vee> = {c}, expected 2"
                    )));
                }
                if i != j && c.is_positive() {
                    return Err(Error::InvalidDatum(format!(
                        "<alpha_{i}, alpha_{j}^vee> = {c} > 0"
                    )));
                }
                cartan.set(i, j, c);
            }
        }
        for i in 0..s {
            for j in 0..s {
                if cartan.get(i, j).is_zero() != cartan.get(j, i).is_zero() {
                    return Err(Error::InvalidDatum(
                        "Cartan matrix zero pattern is not symmetric".into(),
                    ));
                }
            }
        }

        // independence of simples on both sides
        if linalg::row_hnf(&IMat::from_rows(simple_ch.clone())).pivots.len() != s {
            return Err(Error::InvalidDatum("simple roots are linearly dependent".into()));
        }
        if linalg::row_hnf(&IMat::from_rows(simple_cov.clone())).pivots.len() != s {
            return Err(Error::InvalidDatum("simple coroots are linearly dependent".into()));
        }

        // finite type: symmetrizable with positive definite symmetrization
        check_finite_type(&cartan)?;

        // sigma permutes the simple roots compatibly on both sides
        let mut simple_perm = vec![usize::MAX; s];
        for i in 0..s {
            let img_ch = sigma_ch.mul_vec(&simple_ch[i]);
            let j = simple_ch
                .iter()
                .position(|v| *v == img_ch)
                .ok_or_else(|| Error::InvalidDatum("sigma does not permute the simple roots".into()))?;
            let img_cov = sigma.mul_vec(&simple_cov[i]);
            if img_cov != simple_cov[j] {
                return Err(Error::InvalidDatum(
                    "sigma acts incompatibly on simple roots and coroots".into(),
                ));
            }
            simple_perm[i] = j;
        }
        {
            let mut seen = vec![false; s];
            for &j in &simple_perm {
                if seen[j] {
                    return Err(Error::InvalidDatum("sigma maps two simple roots together".into()));
                }
                seen[j] = true;
            }
        }

        // order of sigma
        let mut pow = sigma.clone();
        let mut sigma_order = 1;
        while !pow.is_identity() {
            pow = pow.mul(&sigma);
            sigma_order += 1;
            if sigma_order > MAX_SIGMA_ORDER {
                return Err(Error::InvalidDatum("sigma order exceeds the supported bound".into()));
            }
        }

        // generate all roots by reflection closure
        let mut seen: HashMap<Vec<Int>, Vec<Int>> = HashMap::new();
        let mut queue: VecDeque<(Vec<Int>, Vec<Int>)> = VecDeque::new();
        for i in 0..s {
            seen.insert(simple_ch[i].clone(), simple_cov[i].clone());
            queue.push_back((simple_ch[i].clone(), simple_cov[i].clone()));
        }
        while let Some((ch, cov)) = queue.pop_front() {
            for i in 0..s {
                let c1 = pairing(&ch, &simple_cov[i]);
                let new_ch: Vec<Int> =
                    ch.iter().zip(&simple_ch[i]).map(|(a, b)| a - &c1 * b).collect();
                let c2 = pairing(&simple_ch[i], &cov);
                let new_cov: Vec<Int> =
                    cov.iter().zip(&simple_cov[i]).map(|(a, b)| a - &c2 * b).collect();
                match seen.get(&new_ch) {
                    Some(existing) => {
                        if *existing != new_cov {
                            return Err(Error::InvalidDatum(
                                "reflection closure assigned two coroots to one root".into(),
                            ));
                        }
                    }
                    None => {
                        seen.insert(new_ch.clone(), new_cov.clone());
                        queue.push_back((new_ch, new_cov));
                        if seen.len() > MAX_ROOTS {
                            return Err(Error::InfiniteType(
                                "reflection closure exceeded the root cap".into(),
                            ));
                        }
                    }
                }
            }
        }

        // expansions, positivity, sorting
        let simple_ch_rat: Vec<Vec<Int>> = simple_ch.clone();
        let mut pos: Vec<Root> = Vec::new();
        for (ch, cov) in seen.iter() {
            if pairing(ch, cov) != Int::from(2) {
                return Err(Error::InvalidDatum("generated root with <a, a^vee> != 2".into()));
            }
            let target: Vec<Rat> = crate::to_rat_vec(ch);
            let coeffs = linalg::rat_combination(&simple_ch_rat, &target).ok_or_else(|| {
                Error::Internal("root outside the span of the simple roots".into())
            })?;
            let expansion = crate::rat_vec_to_int(&coeffs)
                .ok_or_else(|| Error::Internal("non-integral root expansion".into()))?;
            let some_pos = expansion.iter().any(|c| c.is_positive());
            let some_neg = expansion.iter().any(|c| c.is_negative());
            if some_pos && some_neg {
                return Err(Error::Internal("root expansion with mixed signs".into()));
            }
            if some_pos {
                let height: Int = expansion.iter().cloned().sum();
                pos.push(Root { ch: ch.clone(), cov: cov.clone(), positive: true, expansion, height });
            }
        }
        pos.sort_by(|a, b| (a.height.clone(), a.ch.clone()).cmp(&(b.height.clone(), b.ch.clone())));
        let n_positive = pos.len();
        if 2 * n_positive != seen.len() {
            return Err(Error::Internal("positive roots are not half of all roots".into()));
        }
        let mut roots = pos;
        for k in 0..n_positive {
            let r = &roots[k];
            roots.push(Root {
                ch: r.ch.iter().map(|x| -x.clone()).collect(),
                cov: r.cov.iter().map(|x| -x.clone()).collect(),
                positive: false,
                expansion: r.expansion.iter().map(|x| -x.clone()).collect(),
                height: -r.height.clone(),
            });
        }

        let mut root_by_ch = HashMap::new();
        let mut root_by_cov = HashMap::new();
        for (i, r) in roots.iter().enumerate() {
            root_by_ch.insert(r.ch.clone(), i);
            if root_by_cov.insert(r.cov.clone(), i).is_some() {
                return Err(Error::InvalidDatum("two roots share a coroot".into()));
            }
        }

        let rd = RootDatum {
            name,
            rank,
            pairing_mat,
            simple_ch,
            simple_cov,
            roots,
            n_positive,
            sigma,
            sigma_ch,
            sigma_order,
            simple_perm,
            root_by_ch,
            root_by_cov,
            weyl_cache: Mutex::new(HashMap::new()),
        };

        // sigma must permute the full root set
        for i in 0..rd.roots.len() {
            let img = rd.sigma_ch.mul_vec(&rd.roots[i].ch);
            let j = rd
                .root_by_ch
                .get(&img)
                .ok_or_else(|| Error::InvalidDatum("sigma does not permute the roots".into()))?;
            if rd.sigma.mul_vec(&rd.roots[i].cov) != rd.roots[*j].cov {
                return Err(Error::InvalidDatum("sigma acts incompatibly on coroots".into()));
            }
        }
        // pairing invariance: sigma_ch^T P sigma = P
        if rd.sigma_ch.transpose().mul(&rd.pairing_mat).mul(&rd.sigma) != rd.pairing_mat {
            return Err(Error::Internal("derived sigma_ch does not preserve the pairing".into()));
        }
        Ok(rd)
    }

    pub fn n_simple(&self) -> usize {
        self.simple_ch.len()
    }

    pub fn root(&self, id: usize) -> &Root {
        &self.roots[id]
    }

    pub fn n_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn neg_root(&self, id: usize) -> usize {
        if id < self.n_positive {
            id + self.n_positive
        } else {
            id - self.n_positive
        }
    }

    pub fn root_id_by_ch(&self, ch: &[Int]) -> Option<usize> {
        self.root_by_ch.get(ch).copied()
    }

    pub fn root_id_by_cov(&self, cov: &[Int]) -> Option<usize> {
        self.root_by_cov.get(cov).copied()
    }

    /// Root id of simple root i.
    pub fn simple_root_id(&self, i: usize) -> usize {
        self.root_id_by_ch(&self.simple_ch[i]).expect("simple root must be registered")
    }

    pub fn pairing(&self, ch: &[Int], cov: &[Int]) -> Int {
        let pv = self.pairing_mat.mul_vec(cov);
        ch.iter().zip(&pv).map(|(a, b)| a * b).sum()
    }

    pub fn pairing_rat(&self, ch: &[Int], cov: &[Rat]) -> Rat {
        let pv = self.pairing_mat.mul_vec_rat(cov);
        ch.iter()
            .zip(&pv)
            .map(|(a, b)| Rat::from_integer(a.clone()) * b)
            .fold(Rat::zero(), |s, x| s + x)
    }

    pub fn sigma_cov(&self, v: &[Int]) -> Vec<Int> {
        self.sigma.mul_vec(v)
    }

    pub fn sigma_cov_rat(&self, v: &[Rat]) -> Vec<Rat> {
        self.sigma.mul_vec_rat(v)
    }

    pub fn sigma_on_root(&self, id: usize) -> usize {
        let img = self.sigma_ch.mul_vec(&self.roots[id].ch);
        *self.root_by_ch.get(&img).expect("sigma permutes the roots")
    }

    /// sigma-orbit of a root, listed cyclically starting at `id`.
    pub fn sigma_orbit_of_root(&self, id: usize) -> Vec<usize> {
        let mut orbit = vec![id];
        let mut cur = self.sigma_on_root(id);
        while cur != id {
            orbit.push(cur);
            cur = self.sigma_on_root(cur);
        }
        orbit
    }

    /// Partition of `ids` into sigma-orbits (must be sigma-stable as a set).
    /// Each orbit starts at its minimal id; orbits sorted by that minimum.
    pub fn sigma_orbits_on(&self, ids: &[usize]) -> Result<Vec<Vec<usize>>> {
        let set: BTreeSet<usize> = ids.iter().copied().collect();
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        let mut orbits = Vec::new();
        for &id in &set {
            if seen.contains(&id) {
                continue;
            }
            let orbit = self.sigma_orbit_of_root(id);
            for &x in &orbit {
                if !set.contains(&x) {
                    return Err(Error::Precondition(
                        "root set is not sigma-stable".into(),
                    ));
                }
                seen.insert(x);
            }
            orbits.push(orbit);
        }
        Ok(orbits)
    }

    /// sigma-orbits on simple-root indices.
    pub fn simple_orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n_simple()];
        let mut orbits = Vec::new();
        for i in 0..self.n_simple() {
            if seen[i] {
                continue;
            }
            let mut orbit = vec![i];
            seen[i] = true;
            let mut cur = self.simple_perm[i];
            while cur != i {
                orbit.push(cur);
                seen[cur] = true;
                cur = self.simple_perm[cur];
            }
            orbits.push(orbit);
        }
        orbits
    }

    pub fn levi_sigma(&self, l: &LeviSubset) -> LeviSubset {
        LeviSubset(l.0.iter().map(|&i| self.simple_perm[i]).collect())
    }

    pub fn levi_is_sigma_stable(&self, l: &LeviSubset) -> bool {
        self.levi_sigma(l) == *l
    }

    /// Root ids with expansion support inside `l`.
    /// All sigma-stable standard Levi subsets (unions of sigma-orbits of
    /// simple roots), from the torus up to the full set, ordered by size then
    /// lexicographically.
    pub fn sigma_stable_levis(&self) -> Vec<LeviSubset> {
        let orbits = self.simple_orbits();
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << orbits.len()) {
            let mut idx: Vec<usize> = Vec::new();
            for (k, orbit) in orbits.iter().enumerate() {
                if mask & (1 << k) != 0 {
                    idx.extend(orbit.iter().copied());
                }
            }
            out.push(LeviSubset::from_indices(&idx));
        }
        out.sort_by_key(|l| (l.len(), l.indices()));
        out
    }

    pub fn levi_root_ids(&self, l: &LeviSubset) -> Vec<usize> {
        (0..self.roots.len())
            .filter(|&id| self.roots[id].support().iter().all(|i| l.contains(*i)))
            .collect()
    }

    pub fn levi_positive_root_ids(&self, l: &LeviSubset) -> Vec<usize> {
        self.levi_root_ids(l).into_iter().filter(|&id| self.roots[id].positive).collect()
    }

    /// Positive roots outside the Levi (the "unipotent directions").
    pub fn phi_n_ids(&self, l: &LeviSubset) -> Vec<usize> {
        (0..self.n_positive)
            .filter(|&id| !self.roots[id].support().iter().all(|i| l.contains(*i)))
            .collect()
    }

    /// Sum of the positive coroots of the Levi.
    pub fn two_rho_cov(&self, l: &LeviSubset) -> Vec<Int> {
        let mut v = vec![Int::zero(); self.rank];
        for id in self.levi_positive_root_ids(l) {
            for (x, y) in v.iter_mut().zip(&self.roots[id].cov) {
                *x += y;
            }
        }
        v
    }

    // ---- Weyl group ----

    pub fn weyl_identity(&self) -> WeylElement {
        WeylElement {
            mat: IMat::identity(self.rank),
            mat_ch: IMat::identity(self.rank),
            word: vec![],
        }
    }

    /// Simple reflection s_i.
    pub fn weyl_simple(&self, i: usize) -> WeylElement {
        let mut mat = IMat::identity(self.rank);
        let mut mat_ch = IMat::identity(self.rank);
        // s_i(lambda) = lambda - <alpha_i, lambda> alpha_i^vee
        // column j of mat: e_j - <alpha_i, e_j> alpha_i^vee
        for j in 0..self.rank {
            let e_j: Vec<Int> =
                (0..self.rank).map(|k| if k == j { Int::one() } else { Int::zero() }).collect();
            let c = self.pairing(&self.simple_ch[i], &e_j);
            for k in 0..self.rank {
                let v = mat.get(k, j) - &c * &self.simple_cov[i][k];
                mat.set(k, j, v);
            }
            // s_i(chi) = chi - <chi, alpha_i^vee> alpha_i
            let c = self.pairing(&e_j, &self.simple_cov[i]);
            for k in 0..self.rank {
                let v = mat_ch.get(k, j) - &c * &self.simple_ch[i][k];
                mat_ch.set(k, j, v);
            }
        }
        WeylElement { mat, mat_ch, word: vec![i] }
    }

    /// Composition: (a * b)(v) = a(b(v)).
    pub fn weyl_mul(&self, a: &WeylElement, b: &WeylElement) -> WeylElement {
        let mut word = a.word.clone();
        word.extend_from_slice(&b.word);
        WeylElement { mat: a.mat.mul(&b.mat), mat_ch: a.mat_ch.mul(&b.mat_ch), word }
    }

    pub fn weyl_inv(&self, w: &WeylElement) -> WeylElement {
        WeylElement {
            mat: w.mat.inverse_unimodular().expect("Weyl matrices are unimodular"),
            mat_ch: w.mat_ch.inverse_unimodular().expect("Weyl matrices are unimodular"),
            word: w.word.iter().rev().copied().collect(),
        }
    }

    /// Build a Weyl element from a word in simple reflections.
    pub fn weyl_from_word(&self, word: &[usize]) -> Result<WeylElement> {
        let mut w = self.weyl_identity();
        for &i in word {
            if i >= self.n_simple() {
                return Err(Error::InvalidInput(format!(
                    "simple reflection index {i} out of range"
                )));
            }
            w = self.weyl_mul(&w, &self.weyl_simple(i));
        }
        Ok(w)
    }

    /// sigma w sigma^{-1}, with the word rewritten through the simple-root
    /// permutation.
    pub fn sigma_conj(&self, w: &WeylElement) -> WeylElement {
        let sigma_inv = self.sigma.inverse_unimodular().expect("sigma is unimodular");
        let sigma_ch_inv = self.sigma_ch.inverse_unimodular().expect("sigma_ch is unimodular");
        WeylElement {
            mat: self.sigma.mul(&w.mat).mul(&sigma_inv),
            mat_ch: self.sigma_ch.mul(&w.mat_ch).mul(&sigma_ch_inv),
            word: w.word.iter().map(|&i| self.simple_perm[i]).collect(),
        }
    }

    /// Full Weyl group of the Levi, BFS order (words are shortest).
    pub fn weyl_group(&self, l: &LeviSubset) -> std::sync::Arc<Vec<WeylElement>> {
        if let Some(cached) = self.weyl_cache.lock().unwrap().get(l) {
            return cached.clone();
        }
        let mut out = vec![self.weyl_identity()];
        let mut seen: HashMap<IMat, ()> = HashMap::new();
        seen.insert(out[0].mat.clone(), ());
        let mut frontier = 0;
        while frontier < out.len() {
            let end = out.len();
            for k in frontier..end {
                for &i in &l.indices() {
                    let w = self.weyl_mul(&self.weyl_simple(i), &out[k]);
                    if !seen.contains_key(&w.mat) {
                        seen.insert(w.mat.clone(), ());
                        out.push(w);
                    }
                }
            }
            frontier = end;
        }
        let arc = std::sync::Arc::new(out);
        self.weyl_cache.lock().unwrap().insert(l.clone(), arc.clone());
        arc
    }

    pub fn weyl_in_levi(&self, w: &WeylElement, l: &LeviSubset) -> bool {
        self.weyl_group(l).iter().any(|x| x == w)
    }

    /// Longest element of W_L, certified by anti-dominantizing 2rho^vee.
    pub fn longest_element(&self, l: &LeviSubset) -> WeylElement {
        let two_rho = crate::to_rat_vec(&self.two_rho_cov(l));
        let cap = self.levi_positive_root_ids(l).len() + 1;
        let mut v = two_rho.clone();
        let mut w = self.weyl_identity();
        for _ in 0..cap {
            let Some(i) = l
                .indices()
                .into_iter()
                .find(|&i| self.pairing_rat(&self.simple_ch[i], &v).is_positive())
            else {
                let neg: Vec<Rat> = two_rho.iter().map(|x| -x.clone()).collect();
                assert_eq!(v, neg, "longest element did not reach -2rho^vee");
                return w;
            };
            let s = self.weyl_simple(i);
            v = s.act_cov_rat(&v);
            w = self.weyl_mul(&s, &w);
        }
        unreachable!("anti-dominantization exceeded the length cap");
    }

    /// L-dominant representative: returns (w(v), w) with w in W_L and w(v)
    /// L-dominant; greedy with the smallest ascending index, so deterministic.
    pub fn dominant_rep_rat(&self, v: &[Rat], l: &LeviSubset) -> (Vec<Rat>, WeylElement) {
        let cap = self.levi_positive_root_ids(l).len() + 1;
        let mut cur = v.to_vec();
        let mut w = self.weyl_identity();
        for _ in 0..=cap {
            let Some(i) = l
                .indices()
                .into_iter()
                .find(|&i| self.pairing_rat(&self.simple_ch[i], &cur).is_negative())
            else {
                return (cur, w);
            };
            let s = self.weyl_simple(i);
            cur = s.act_cov_rat(&cur);
            w = self.weyl_mul(&s, &w);
        }
        unreachable!("dominantization exceeded the length cap");
    }

    pub fn dominant_rep(&self, v: &[Int], l: &LeviSubset) -> (Vec<Int>, WeylElement) {
        let (d, w) = self.dominant_rep_rat(&crate::to_rat_vec(v), l);
        (crate::rat_vec_to_int(&d).expect("integer orbit stays integral"), w)
    }

    pub fn is_dominant_rat(&self, v: &[Rat], l: &LeviSubset) -> bool {
        l.indices()
            .into_iter()
            .all(|i| !self.pairing_rat(&self.simple_ch[i], &v.to_vec()).is_negative())
    }

    pub fn is_dominant(&self, v: &[Int], l: &LeviSubset) -> bool {
        self.is_dominant_rat(&crate::to_rat_vec(v), l)
    }

    /// Reflection in an arbitrary root, with word certificate.
    pub fn reflection(&self, root_id: usize) -> WeylElement {
        let pos_id = if self.roots[root_id].positive { root_id } else { self.neg_root(root_id) };
        // walk the root down to a simple root
        let mut letters: Vec<usize> = Vec::new();
        let mut cur = pos_id;
        loop {
            let r = &self.roots[cur];
            if let Some(i) = (0..self.n_simple()).find(|&i| self.simple_ch[i] == r.ch) {
                let mut word: Vec<usize> = letters.clone();
                word.push(i);
                word.extend(letters.iter().rev());
                let w = self.weyl_from_word(&word).expect("valid reflection word");
                // certificate check: the matrix really is the reflection
                let r0 = &self.roots[pos_id];
                for j in 0..self.rank {
                    let e_j: Vec<Int> = (0..self.rank)
                        .map(|k| if k == j { Int::one() } else { Int::zero() })
                        .collect();
                    let expect: Vec<Int> = {
                        let c = self.pairing(&r0.ch, &e_j);
                        e_j.iter().zip(&r0.cov).map(|(a, b)| a - &c * b).collect()
                    };
                    assert_eq!(w.mat.col_vec(j), expect, "reflection word certificate failed");
                }
                return w;
            }
            let i = (0..self.n_simple())
                .find(|&i| {
                    if self.pairing(&r.ch, &self.simple_cov[i]).is_positive() {
                        let img: Vec<Int> =
                            r.ch.iter()
                                .zip(&self.simple_ch[i])
                                .map(|(a, b)| a - &self.pairing(&r.ch, &self.simple_cov[i]) * b)
                                .collect();
                        self.root_by_ch.get(&img).map_or(false, |&x| self.roots[x].positive)
                    } else {
                        false
                    }
                })
                .expect("positive non-simple root must descend");
            let c = self.pairing(&r.ch, &self.simple_cov[i]);
            let img: Vec<Int> =
                r.ch.iter().zip(&self.simple_ch[i]).map(|(a, b)| a - &c * b).collect();
            cur = self.root_by_ch[&img];
            letters.push(i);
        }
    }

    // ---- dominance, norms ----

    /// Is `lo` <= `hi` in the (L-)dominance order: hi - lo a non-negative
    /// rational (or integral) combination of the simple coroots of L?
    pub fn dominance_rat(
        &self,
        lo: &[Rat],
        hi: &[Rat],
        l: &LeviSubset,
        integral: bool,
    ) -> Result<bool> {
        if integral
            && (lo.iter().any(|x| !x.is_integer()) || hi.iter().any(|x| !x.is_integer()))
        {
            return Err(Error::NonIntegral(
                "integral dominance comparison on non-integral vectors".into(),
            ));
        }
        let diff: Vec<Rat> = hi.iter().zip(lo).map(|(a, b)| a - b).collect();
        let gens: Vec<Vec<Int>> = l.indices().iter().map(|&i| self.simple_cov[i].clone()).collect();
        match linalg::rat_combination(&gens, &diff) {
            None => Ok(false),
            Some(c) => Ok(c
                .iter()
                .all(|x| !x.is_negative() && (!integral || x.is_integer()))),
        }
    }

    pub fn dominance(&self, lo: &[Int], hi: &[Int], l: &LeviSubset, integral: bool) -> Result<bool> {
        self.dominance_rat(&crate::to_rat_vec(lo), &crate::to_rat_vec(hi), l, integral)
    }

    /// Expansion of a cocharacter vector over the simple coroots of L
    /// (rational, None when outside the span).
    pub fn coroot_expansion_rat(&self, v: &[Rat], l: &LeviSubset) -> Option<Vec<Rat>> {
        let gens: Vec<Vec<Int>> = l.indices().iter().map(|&i| self.simple_cov[i].clone()).collect();
        linalg::rat_combination(&gens, v)
    }

    /// Norm |phi| and Galois norm |phi|_Gamma of an element of the coroot
    /// lattice: sum of |coefficients| over simple coroots, resp. sum over
    /// sigma-orbits of |sum of coefficients in the orbit|.
    pub fn norms(&self, phi: &[Int]) -> Result<(Int, Int)> {
        let gens: Vec<Vec<Int>> = (0..self.n_simple()).map(|i| self.simple_cov[i].clone()).collect();
        if gens.is_empty() {
            if phi.iter().all(|x| x.is_zero()) {
                return Ok((Int::zero(), Int::zero()));
            }
            return Err(Error::NotInLattice("nonzero vector, empty coroot lattice".into()));
        }
        let a = IMat::from_cols(gens);
        let coeffs = linalg::solve_int(&a, phi)
            .ok_or_else(|| Error::NotInLattice("not in the coroot lattice".into()))?;
        let norm: Int = coeffs.iter().map(|c| c.abs()).sum();
        let mut gal = Int::zero();
        for orbit in self.simple_orbits() {
            let s: Int = orbit.iter().map(|&i| coeffs[i].clone()).sum();
            gal += s.abs();
        }
        Ok((norm, gal))
    }

    // ---- closures and subsystems ----

    /// Smallest symmetric closed subset of roots containing the seed.
    pub fn closed_symmetric_closure(&self, seed: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::new();
        for &id in seed {
            set.insert(id);
            set.insert(self.neg_root(id));
        }
        loop {
            let mut added = false;
            let cur: Vec<usize> = set.iter().copied().collect();
            for (k, &a) in cur.iter().enumerate() {
                for &b in cur.iter().skip(k + 1) {
                    let sum: Vec<Int> =
                        self.roots[a].ch.iter().zip(&self.roots[b].ch).map(|(x, y)| x + y).collect();
                    if let Some(&id) = self.root_by_ch.get(&sum) {
                        if set.insert(id) {
                            set.insert(self.neg_root(id));
                            added = true;
                        }
                    }
                }
            }
            if !added {
                return set.into_iter().collect();
            }
        }
    }

    /// Simple system of a closed symmetric subsystem w.r.t. the ambient
    /// positivity: positive members that are not sums of two positive members.
    pub fn subsystem_basis(&self, sys: &[usize]) -> Vec<usize> {
        let pos: BTreeSet<usize> = sys.iter().copied().filter(|&id| self.roots[id].positive).collect();
        pos.iter()
            .copied()
            .filter(|&g| {
                !pos.iter().any(|&a| {
                    pos.iter().any(|&b| {
                        a <= b && {
                            let sum: Vec<Int> = self.roots[a]
                                .ch
                                .iter()
                                .zip(&self.roots[b].ch)
                                .map(|(x, y)| x + y)
                                .collect();
                            sum == self.roots[g].ch
                        }
                    })
                })
            })
            .collect()
    }

    /// Connected components of a set of roots under the "non-orthogonal"
    /// adjacency; components sorted by minimal member.
    pub fn components_of(&self, ids: &[usize]) -> Vec<Vec<usize>> {
        let list: Vec<usize> = ids.to_vec();
        let n = list.len();
        let mut comp: Vec<Option<usize>> = vec![None; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if comp[start].is_some() {
                continue;
            }
            let c = out.len();
            let mut stack = vec![start];
            comp[start] = Some(c);
            let mut members = vec![list[start]];
            while let Some(k) = stack.pop() {
                for j in 0..n {
                    if comp[j].is_none()
                        && !self
                            .pairing(&self.roots[list[k]].ch, &self.roots[list[j]].cov)
                            .is_zero()
                    {
                        comp[j] = Some(c);
                        stack.push(j);
                        members.push(list[j]);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out.sort_by_key(|m| m[0]);
        out
    }

    // ---- minuscule cocharacters ----

    /// <alpha, mu> in {-1, 0, 1} for every root alpha of the Levi.
    pub fn is_minuscule(&self, mu: &[Int], l: &LeviSubset) -> bool {
        self.levi_positive_root_ids(l)
            .into_iter()
            .all(|id| self.pairing(&self.roots[id].ch, mu).abs() <= Int::one())
    }

    /// Decompose mu1 - mu2 (conjugate minuscule cocharacters) into pairwise
    /// orthogonal roots gamma_i with mu2 = prod s_{gamma_i} (mu1),
    /// <gamma_i, mu1> = 1, <gamma_i, mu2> = -1. Returns root ids.
    pub fn orthogonal_decomposition(&self, mu1: &[Int], mu2: &[Int]) -> Result<Vec<usize>> {
        let full = LeviSubset::full(self.n_simple());
        if !self.is_minuscule(mu1, &full) || !self.is_minuscule(mu2, &full) {
            return Err(Error::NotMinuscule(
                "orthogonal decomposition needs minuscule cocharacters".into(),
            ));
        }
        if self.dominant_rep(mu1, &full).0 != self.dominant_rep(mu2, &full).0 {
            return Err(Error::Precondition(
                "cocharacters are not Weyl-conjugate".into(),
            ));
        }
        let diff: Vec<Int> = mu1.iter().zip(mu2).map(|(a, b)| a - b).collect();
        let gens: Vec<Vec<Int>> = (0..self.n_simple()).map(|i| self.simple_cov[i].clone()).collect();
        let coeffs = if gens.is_empty() {
            vec![]
        } else {
            linalg::solve_int(&IMat::from_cols(gens), &diff).ok_or_else(|| {
                Error::NotInLattice("difference outside the coroot lattice".into())
            })?
        };
        // multiset of signed simple roots realizing the difference on the
        // coroot side
        let mut bag: Vec<usize> = Vec::new();
        for (i, c) in coeffs.iter().enumerate() {
            let id = if c.is_negative() {
                self.neg_root(self.simple_root_id(i))
            } else {
                self.simple_root_id(i)
            };
            let mut n = c.abs();
            while n.is_positive() {
                bag.push(id);
                n -= 1;
            }
        }
        // regroup: cancel opposite pairs; merge negatively-paired pairs whose
        // coroot sum is again a coroot; each step shrinks the bag
        'outer: loop {
            bag.sort_unstable();
            for i in 0..bag.len() {
                for j in (i + 1)..bag.len() {
                    if bag[j] == self.neg_root(bag[i]) {
                        bag.remove(j);
                        bag.remove(i);
                        continue 'outer;
                    }
                    let pair =
                        self.pairing(&self.roots[bag[i]].ch, &self.roots[bag[j]].cov);
                    if pair.is_negative() {
                        let sum_cov: Vec<Int> = self.roots[bag[i]]
                            .cov
                            .iter()
                            .zip(&self.roots[bag[j]].cov)
                            .map(|(a, b)| a + b)
                            .collect();
                        if let Some(&id) = self.root_by_cov.get(&sum_cov) {
                            bag.remove(j);
                            bag.remove(i);
                            bag.push(id);
                            continue 'outer;
                        }
                    }
                }
            }
            break;
        }
        // postconditions forced by minusculity
        for (k, &a) in bag.iter().enumerate() {
            if self.pairing(&self.roots[a].ch, mu1) != Int::one() {
                return Err(Error::Internal("decomposition root must pair 1 with mu1".into()));
            }
            if self.pairing(&self.roots[a].ch, mu2) != -Int::one() {
                return Err(Error::Internal("decomposition root must pair -1 with mu2".into()));
            }
            for &b in bag.iter().skip(k + 1) {
                if !self.pairing(&self.roots[a].ch, &self.roots[b].cov).is_zero() {
                    return Err(Error::Internal("decomposition roots must be orthogonal".into()));
                }
            }
        }
        let total: Vec<Int> = bag.iter().fold(vec![Int::zero(); self.rank], |mut acc, &id| {
            for (x, y) in acc.iter_mut().zip(&self.roots[id].cov) {
                *x += y;
            }
            acc
        });
        if total != diff {
            return Err(Error::Internal("decomposition does not sum to the difference".into()));
        }
        let mut cur = mu1.to_vec();
        for &id in &bag {
            let w = self.reflection(id);
            cur = w.act_cov(&cur);
        }
        if cur != mu2 {
            return Err(Error::Internal("reflections do not carry mu1 to mu2".into()));
        }
        // order is cosmetic (the reflections commute); list by descending
        // coroot so earlier coordinates come first
        bag.sort_by(|&a, &b| self.roots[b].cov.cmp(&self.roots[a].cov));
        Ok(bag)
    }

    /// Fundamental coweight of alpha_i inside the Levi (rational, supported on
    /// the span of the Levi's simple coroots). Used by independent dominance
    /// checks in tests.
    pub fn fundamental_coweight_rat(&self, l: &LeviSubset, i: usize) -> Result<Vec<Rat>> {
        let idx = l.indices();
        let pos = idx
            .iter()
            .position(|&k| k == i)
            .ok_or_else(|| Error::InvalidInput("index not in the Levi".into()))?;
        let k = idx.len();
        let mut cart = IMat::zero(k, k);
        for (a, &ia) in idx.iter().enumerate() {
            for (b, &ib) in idx.iter().enumerate() {
                cart.set(a, b, self.pairing(&self.simple_ch[ia], &self.simple_cov[ib]));
            }
        }
        let mut rhs = vec![Rat::zero(); k];
        rhs[pos] = Rat::one();
        let c = linalg::solve_rat(&cart.transpose(), &rhs)
            .ok_or_else(|| Error::Internal("Cartan matrix of a Levi is invertible".into()))?;
        let mut out = vec![Rat::zero(); self.rank];
        for (a, &ia) in idx.iter().enumerate() {
            for j in 0..self.rank {
                out[j] += &c[a] * Rat::from_integer(self.simple_cov[ia][j].clone());
            }
        }
        Ok(out)
    }
}

// ---- small rational-matrix helpers (internal) ----

type RMat = Vec<Vec<Rat>>;

fn to_rat_mat(a: &IMat) -> RMat {
    (0..a.rows)
        .map(|i| a.row(i).iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect()
}

fn rat_mat_mul(a: &RMat, b: &RMat) -> RMat {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).map(|t| &a[i][t] * &b[t][j]).fold(Rat::zero(), |s, x| s + x))
                .collect()
        })
        .collect()
}

fn rat_inverse(a: &IMat) -> Option<RMat> {
    let n = a.rows;
    let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[j] = Rat::one();
        cols.push(linalg::solve_rat(a, &e)?);
    }
    // cols[j] is column j of the inverse
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}

fn rat_mat_transpose_to_int(a: &RMat) -> Option<IMat> {
    let rows = a.len();
    let cols = a[0].len();
    let mut out = IMat::zero(cols, rows);
    for i in 0..rows {
        for j in 0..cols {
            if !a[i][j].is_integer() {
                return None;
            }
            out.set(j, i, a[i][j].numer().clone());
        }
    }
    Some(out)
}

fn check_finite_type(cartan: &IMat) -> Result<()> {
    let s = cartan.rows;
    if s == 0 {
        return Ok(());
    }
    // symmetrizer by graph propagation
    let mut d: Vec<Option<Rat>> = vec![None; s];
    for start in 0..s {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Rat::one());
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..s {
                if i == j || cartan.get(i, j).is_zero() {
                    continue;
                }
                // d_i c_ij = d_j c_ji
                let want = d[i].clone().unwrap()
                    * Rat::new(cartan.get(i, j).clone(), cartan.get(j, i).clone());
                match &d[j] {
                    None => {
                        d[j] = Some(want);
                        stack.push(j);
                    }
                    Some(have) => {
                        if *have != want {
                            return Err(Error::InfiniteType(
                                "Cartan matrix is not symmetrizable".into(),
                            ));
                        }
                    }
                }
            }
        }
    }
    // positive definiteness of (d_i c_ij) via leading principal minors
    let b: RMat = (0..s)
        .map(|i| {
            (0..s)
                .map(|j| d[i].clone().unwrap() * Rat::from_integer(cartan.get(i, j).clone()))
                .collect()
        })
        .collect();
    for k in 1..=s {
        if !rat_det(&b, k).is_positive() {
            return Err(Error::InfiniteType(
                "symmetrized Cartan matrix is not positive definite".into(),
            ));
        }
    }
    Ok(())
}

fn rat_det(b: &RMat, k: usize) -> Rat {
    let mut m: Vec<Vec<Rat>> = (0..k).map(|i| b[i][..k].to_vec()).collect();
    let mut det = Rat::one();
    for c in 0..k {
        let Some(p) = (c..k).find(|&i| !m[i][c].is_zero()) else { return Rat::zero() };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c].clone();
        let inv = m[c][c].clone();
        for j in c..k {
            let v = &m[c][j] / &inv;
            m[c][j] = v;
        }
        for i in (c + 1)..k {
            if !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..k {
                    let v = &m[i][j] - &f * &m[c][j];
                    m[i][j] = v;
                }
            }
        }
    }
    det
}
