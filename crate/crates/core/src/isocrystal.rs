//! Invariants of twisted conjugacy classes for representatives b = p^lambda w:
//! Newton point, Kottwitz point, basic and superbasic tests, the centralizer
//! Levi, and standard forms of superbasic classes in Levis of restriction-of-
//! scalars general-linear type.
//!
//! Torsion ambiguity of Weyl representatives is irrelevant here: every
//! computed invariant depends only on the pair (lambda, w), and sign
//! adjustments living in the derived group leave both the Newton and the
//! Kottwitz point unchanged. Standard forms are therefore returned at the
//! (lambda, w) level.

use crate::error::{Error, Result};
use crate::linalg::IMat;
use crate::pi1lat::Pi1Group;
use crate::rootdata::{LeviSubset, RootDatum, WeylElement};
use crate::{to_rat_vec, Int, Rat};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Cap on the order search for the twisted Weyl action; the true order always
/// divides |W| * ord(sigma), so hitting the cap indicates malformed input.
pub const DEFAULT_ORDER_CAP: usize = 10_000;

/// Representative b = p^lambda w of a twisted conjugacy class, optionally
/// considered inside a standard Levi.
#[derive(Clone, Debug)]
pub struct BRep {
    pub lambda: Vec<Int>,
    pub w: WeylElement,
    pub levi: Option<LeviSubset>,
}

/// JSON form of a representative.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BRepSpec {
    #[serde(with = "crate::serial::ivec")]
    pub lambda: Vec<Int>,
    #[serde(default)]
    pub w_word: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levi: Option<Vec<usize>>,
}

impl BRep {
    pub fn new(
        rd: &RootDatum,
        lambda: Vec<Int>,
        w: WeylElement,
        levi: Option<LeviSubset>,
    ) -> Result<BRep> {
        if lambda.len() != rd.rank {
            return Err(Error::InvalidInput(format!(
                "lambda has length {}, expected {}",
                lambda.len(),
                rd.rank
            )));
        }
        if let Some(l) = &levi {
            if !rd.weyl_in_levi(&w, l) {
                return Err(Error::NotInWeylSubgroup(format!(
                    "w is not in the Weyl group of the Levi {:?}",
                    l.indices()
                )));
            }
        }
        Ok(BRep { lambda, w, levi })
    }

    pub fn translation(rd: &RootDatum, lambda: Vec<Int>) -> Result<BRep> {
        let id = rd.weyl_identity();
        BRep::new(rd, lambda, id, None)
    }

    pub fn from_spec(rd: &RootDatum, spec: &BRepSpec) -> Result<BRep> {
        let w = rd.weyl_from_word(&spec.w_word)?;
        let levi = match &spec.levi {
            None => None,
            Some(idx) => {
                for &i in idx {
                    if i >= rd.n_simple() {
                        return Err(Error::InvalidInput(format!(
                            "levi index {i} out of range"
                        )));
                    }
                }
                Some(LeviSubset::from_indices(idx))
            }
        };
        BRep::new(rd, spec.lambda.clone(), w, levi)
    }

    pub fn to_spec(&self) -> BRepSpec {
        BRepSpec {
            lambda: self.lambda.clone(),
            w_word: self.w.word.clone(),
            levi: self.levi.as_ref().map(|l| l.indices()),
        }
    }

    /// The Levi this representative is considered in (the full group when
    /// none was declared).
    pub fn ambient_levi(&self, rd: &RootDatum) -> LeviSubset {
        self.levi.clone().unwrap_or_else(|| LeviSubset::full(rd.n_simple()))
    }
}

/// Matrix of psi = (action of w) composed with sigma on the cocharacter
/// lattice; its iterates drive the Newton average.
pub fn psi_matrix(rd: &RootDatum, b: &BRep) -> IMat {
    b.w.mat.mul(&rd.sigma)
}

fn matrix_order(m: &IMat, cap: usize) -> Result<usize> {
    let n = m.rows;
    let mut cur = m.clone();
    for k in 1..=cap {
        if cur.is_identity() {
            return Ok(k);
        }
        cur = cur.mul(m);
        let _ = n;
    }
    Err(Error::ResourceExhausted(format!(
        "twisted Weyl action order exceeds the cap {cap}"
    )))
}

/// Newton point of b: the dominant representative together with the raw
/// average attached to this particular representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPoint {
    /// Dominant representative; Galois-invariant.
    pub dom: Vec<Rat>,
    /// The honest average (1/n) sum psi^i(lambda); Weyl-conjugate to `dom`.
    pub raw: Vec<Rat>,
    /// Order of psi on the cocharacter lattice.
    pub psi_order: usize,
}

pub fn newton_point_capped(rd: &RootDatum, b: &BRep, cap: usize) -> Result<NewtonPoint> {
    let psi = psi_matrix(rd, b);
    let n = matrix_order(&psi, cap)?;
    let mut acc = vec![Rat::zero(); rd.rank];
    let mut cur = to_rat_vec(&b.lambda);
    for _ in 0..n {
        for (a, c) in acc.iter_mut().zip(&cur) {
            *a += c;
        }
        cur = psi.mul_vec_rat(&cur);
    }
    let n_rat = Rat::from_integer(Int::from(n));
    let raw: Vec<Rat> = acc.into_iter().map(|a| a / &n_rat).collect();
    let (dom, _) = rd.dominant_rep_rat(&raw, &LeviSubset::full(rd.n_simple()));
    // psi fixes the average, hence sigma maps it into its Weyl orbit; the
    // dominant representative is then a fixed point of sigma
    assert_eq!(rd.sigma_cov_rat(&dom), dom, "dominant Newton point must be Galois-invariant");
    Ok(NewtonPoint { dom, raw, psi_order: n })
}

pub fn newton_point(rd: &RootDatum, b: &BRep) -> Result<NewtonPoint> {
    newton_point_capped(rd, b, DEFAULT_ORDER_CAP)
}

/// Kottwitz point: the class of an element in the Galois coinvariants of
/// pi1 of a Levi. Classes are comparable iff their spaces agree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoinvClass {
    pub space: String,
    #[serde(with = "crate::serial::ivec")]
    pub coords: Vec<Int>,
    #[serde(with = "crate::serial::ivec")]
    pub torsion: Vec<Int>,
}

/// kappa_L(b): the class of lambda in pi1(L)_Gamma. The Weyl part has a
/// representative in the hyperspecial subgroup and contributes nothing.
pub fn kottwitz_point(rd: &RootDatum, b: &BRep, l: &LeviSubset) -> Result<CoinvClass> {
    if !rd.weyl_in_levi(&b.w, l) {
        return Err(Error::NotInWeylSubgroup(
            "representative does not lie in the requested Levi".into(),
        ));
    }
    if !rd.levi_is_sigma_stable(l) {
        return Err(Error::Precondition(
            "Kottwitz point needs a sigma-stable Levi".into(),
        ));
    }
    let p = Pi1Group::new(rd, l);
    kappa_of_cochar(rd, &p, &b.lambda)
}

/// kappa of a plain cocharacter (the class of a translation element).
pub fn kappa_of_cochar(rd: &RootDatum, p: &Pi1Group, v: &[Int]) -> Result<CoinvClass> {
    let _ = rd;
    let q = p.coinvariants()?;
    Ok(CoinvClass {
        space: format!("{}_Gamma", p.space),
        coords: q.project(&p.project(v)),
        torsion: q.torsion_padded(),
    })
}

/// Basic inside the given sigma-stable Levi: the raw Newton average pairs to
/// zero with every root of the Levi.
pub fn is_basic(rd: &RootDatum, b: &BRep, l: &LeviSubset) -> Result<bool> {
    if !rd.weyl_in_levi(&b.w, l) {
        return Err(Error::NotInWeylSubgroup(
            "representative does not lie in the requested Levi".into(),
        ));
    }
    if !rd.levi_is_sigma_stable(l) {
        return Err(Error::Precondition("basicness needs a sigma-stable Levi".into()));
    }
    let nu = newton_point(rd, b)?;
    Ok(l.indices()
        .into_iter()
        .all(|i| rd.pairing_rat(&rd.simple_ch[i], &nu.raw).is_zero()))
}

/// The centralizer Levi M_b: simple roots pairing to zero with the dominant
/// Newton point. Always sigma-stable.
pub fn centralizer_levi(rd: &RootDatum, b: &BRep) -> Result<LeviSubset> {
    let nu = newton_point(rd, b)?;
    let l = LeviSubset::from_indices(
        &(0..rd.n_simple())
            .filter(|&i| rd.pairing_rat(&rd.simple_ch[i], &nu.dom).is_zero())
            .collect::<Vec<_>>(),
    );
    assert!(rd.levi_is_sigma_stable(&l), "centralizer of an invariant point is stable");
    Ok(l)
}

/// One Galois orbit of type-A Dynkin components of a Levi: chains of simple
/// indices, consecutive chains related by sigma, with trivial return map.
#[derive(Clone, Debug)]
pub struct TypeAOrbit {
    /// Number of boxes h (chain length + 1) of each component in the orbit.
    pub h: usize,
    /// Chains in orbit order; chains[t+1] = sigma(chains[t]) elementwise.
    pub chains: Vec<Vec<usize>>,
}

/// Decompose the Dynkin diagram of a sigma-stable Levi into Galois orbits of
/// type-A chains. Errors when a component is not a simply-laced chain or when
/// the Galois return map reverses a chain: in both cases the Levi is not of
/// restriction-of-scalars general-linear type and cannot carry superbasic
/// classes.
pub fn type_a_orbits(rd: &RootDatum, l: &LeviSubset) -> Result<Vec<TypeAOrbit>> {
    if !rd.levi_is_sigma_stable(l) {
        return Err(Error::Precondition("orbit decomposition needs a stable Levi".into()));
    }
    let simple_ids: Vec<usize> = l.indices().iter().map(|&i| rd.simple_root_id(i)).collect();
    let components = rd.components_of(&simple_ids);
    // back to simple indices, as sorted chains-to-be
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for c in &components {
        let mut idx: Vec<usize> = c
            .iter()
            .map(|&id| {
                (0..rd.n_simple())
                    .find(|&i| rd.simple_root_id(i) == id)
                    .expect("component members are simple roots")
            })
            .collect();
        idx.sort_unstable();
        comps.push(idx);
    }
    comps.sort();

    let chain_of = |nodes: &[usize]| -> Result<Vec<usize>> {
        let adj = |a: usize, b: usize| !rd.pairing(&rd.simple_ch[a], &rd.simple_cov[b]).is_zero();
        if nodes.len() == 1 {
            return Ok(nodes.to_vec());
        }
        let mut ends = Vec::new();
        for &a in nodes {
            let deg = nodes.iter().filter(|&&b| b != a && adj(a, b)).count();
            if deg > 2 {
                return Err(Error::SuperbasicUnsupported(
                    "Levi component has a branch node, so it is not of type A".into(),
                ));
            }
            if deg == 1 {
                ends.push(a);
            }
        }
        if ends.len() != 2 {
            return Err(Error::SuperbasicUnsupported(
                "Levi component is not a chain".into(),
            ));
        }
        let mut chain = vec![*ends.iter().min().unwrap()];
        while chain.len() < nodes.len() {
            let last = *chain.last().unwrap();
            let next = nodes
                .iter()
                .copied()
                .find(|&b| !chain.contains(&b) && adj(last, b))
                .ok_or_else(|| Error::SuperbasicUnsupported("component is not a chain".into()))?;
            chain.push(next);
        }
        // single bonds only: both Cartan pairings of neighbors equal -1
        for win in chain.windows(2) {
            let (a, b) = (win[0], win[1]);
            let ab = rd.pairing(&rd.simple_ch[a], &rd.simple_cov[b]);
            let ba = rd.pairing(&rd.simple_ch[b], &rd.simple_cov[a]);
            if ab != -Int::one() || ba != -Int::one() {
                return Err(Error::SuperbasicUnsupported(
                    "Levi component has a multiple bond, so it is not of type A".into(),
                ));
            }
        }
        Ok(chain)
    };

    let mut used = vec![false; comps.len()];
    let mut orbits = Vec::new();
    for start in 0..comps.len() {
        if used[start] {
            continue;
        }
        let mut chain = chain_of(&comps[start])?;
        let base = chain.clone();
        let mut chains = Vec::new();
        loop {
            // mark the component this chain lives in
            let mut sorted = chain.clone();
            sorted.sort_unstable();
            let pos = comps
                .iter()
                .position(|c| *c == sorted)
                .expect("sigma permutes the components of a stable Levi");
            if used[pos] && chains.is_empty() {
                unreachable!("fresh orbit start cannot be used");
            }
            if !used[pos] {
                used[pos] = true;
                chains.push(chain.clone());
            } else {
                // back at the start: the return map must be trivial
                if chain != base {
                    return Err(Error::SuperbasicUnsupported(
                        "Galois return map reverses a type-A chain; the factor is a twisted \
                         form, not of restriction-of-scalars general-linear type"
                            .into(),
                    ));
                }
                break;
            }
            chain = chain.iter().map(|&i| rd.simple_perm[i]).collect();
        }
        orbits.push(TypeAOrbit { h: base.len() + 1, chains });
    }
    orbits.sort_by_key(|o| o.chains[0].clone());
    Ok(orbits)
}

/// Per-copy Kottwitz residue of a cocharacter along one chain, mod h.
fn chain_class(rd: &RootDatum, chain: &[usize], lambda: &[Int], h: usize) -> Int {
    let mut m = Int::zero();
    for (j, &i) in chain.iter().enumerate() {
        m += Int::from(j as i64 + 1) * rd.pairing(&rd.simple_ch[i], lambda);
    }
    m.mod_floor(&Int::from(h as i64))
}

/// True iff b is basic in the Levi, every Galois factor of the Levi's adjoint
/// group is of restriction-of-scalars general-linear type, and each factor
/// passes the coprimality test gcd(sum of per-copy Kottwitz integers, h) = 1.
/// Errors distinctly when a factor is not of the required type while b is
/// basic: superbasic classes cannot exist there at all.
pub fn is_superbasic(rd: &RootDatum, b: &BRep, l: &LeviSubset) -> Result<bool> {
    if !is_basic(rd, b, l)? {
        return Ok(false);
    }
    let orbits = type_a_orbits(rd, l)?;
    for o in &orbits {
        let mut total = Int::zero();
        for chain in &o.chains {
            total += chain_class(rd, chain, &b.lambda, o.h);
        }
        if total.gcd(&Int::from(o.h as i64)) != Int::one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Symbolic product of pairs (lambda, w) representing p^lambda w.
fn pair_mul(
    rd: &RootDatum,
    a: &(Vec<Int>, WeylElement),
    b: &(Vec<Int>, WeylElement),
) -> (Vec<Int>, WeylElement) {
    let moved = a.1.act_cov(&b.0);
    let lambda = a.0.iter().zip(&moved).map(|(x, y)| x + y).collect();
    (lambda, rd.weyl_mul(&a.1, &b.1))
}

fn pair_inv(rd: &RootDatum, a: &(Vec<Int>, WeylElement)) -> (Vec<Int>, WeylElement) {
    let wi = rd.weyl_inv(&a.1);
    let lambda: Vec<Int> = wi.act_cov(&a.0).into_iter().map(|x| -x).collect();
    (lambda, wi)
}

fn pair_pow(rd: &RootDatum, base: &(Vec<Int>, WeylElement), m: i64) -> (Vec<Int>, WeylElement) {
    let b = if m < 0 { pair_inv(rd, base) } else { base.clone() };
    let mut acc = (vec![Int::zero(); rd.rank], rd.weyl_identity());
    for _ in 0..m.unsigned_abs() {
        acc = pair_mul(rd, &acc, &b);
    }
    acc
}

/// Standard form of the superbasic class with the given per-component
/// Kottwitz integers in a Levi of restriction-of-scalars general-linear
/// type. `m` is indexed by the components of the orbit decomposition, in the
/// order `type_a_orbits` lists them (orbit by orbit, chains in orbit order).
///
/// On each component with chain gamma_1..gamma_{h-1} the result is the m-th
/// power of the shift pair (E_1, cycle), where E_1 is the unique minuscule
/// class with first pairing 1; powers glue across components by summing the
/// cocharacters and multiplying the commuting Weyl parts.
///
/// The pairing profile pins E_1 only up to the sublattice central in the
/// Levi; the canonical coset representative modulo that sublattice is used,
/// which reproduces the familiar basis vectors on general-linear lattices.
pub fn superbasic_standard_form(rd: &RootDatum, l: &LeviSubset, m: &[i64]) -> Result<BRep> {
    let orbits = type_a_orbits(rd, l)?;
    let n_components: usize = orbits.iter().map(|o| o.chains.len()).sum();
    if m.len() != n_components {
        return Err(Error::InvalidInput(format!(
            "expected {n_components} Kottwitz integers, got {}",
            m.len()
        )));
    }
    // coprimality per Galois orbit
    let mut k = 0;
    for o in &orbits {
        let total: i64 = m[k..k + o.chains.len()].iter().sum();
        k += o.chains.len();
        if Int::from(total).gcd(&Int::from(o.h as i64)) != Int::one() {
            return Err(Error::Precondition(format!(
                "coprimality fails: gcd({total}, {}) != 1 on one Galois factor",
                o.h
            )));
        }
    }

    // pairing rows of all Levi simples, for solving the e_h-like vector
    let levi_idx = l.indices();
    let rows: Vec<Vec<Int>> = levi_idx
        .iter()
        .map(|&i| {
            (0..rd.rank)
                .map(|c| {
                    let mut e = vec![Int::zero(); rd.rank];
                    e[c] = Int::one();
                    rd.pairing(&rd.simple_ch[i], &e)
                })
                .collect()
        })
        .collect();
    let a = IMat::from_rows(rows);
    let central = crate::linalg::lattice_canon(&crate::linalg::kernel_basis(&a), rd.rank);

    let mut lambda = vec![Int::zero(); rd.rank];
    let mut w = rd.weyl_identity();
    let mut k = 0;
    for o in &orbits {
        for chain in &o.chains {
            let mk = m[k];
            k += 1;
            // v with <gamma_last, v> = -1 and zero pairing on the rest of l
            let mut rhs = vec![Int::zero(); levi_idx.len()];
            let last = *chain.last().unwrap();
            rhs[levi_idx.iter().position(|&i| i == last).unwrap()] = -Int::one();
            let v = crate::linalg::solve_int(&a, &rhs).ok_or_else(|| {
                Error::StandardFormUnavailable(
                    "the cocharacter lattice has no vector with the general-linear \
                     pairing profile on this component"
                        .into(),
                )
            })?;
            let mut e1 = crate::linalg::lattice_mod_reduce(&central, &v);
            for &i in chain {
                for (x, c) in e1.iter_mut().zip(&rd.simple_cov[i]) {
                    *x += c;
                }
            }
            let cycle = rd.weyl_from_word(chain)?;
            let (lam_c, w_c) = pair_pow(rd, &(e1, cycle), mk);
            for (x, y) in lambda.iter_mut().zip(&lam_c) {
                *x += y;
            }
            w = rd.weyl_mul(&w, &w_c);
        }
    }
    let b = BRep::new(rd, lambda, w, Some(l.clone()))?;
    // certify: basic and superbasic in l, with the requested residues
    assert!(is_superbasic(rd, &b, l)?, "standard form must be superbasic");
    let mut k = 0;
    for o in &orbits {
        for chain in &o.chains {
            let want = Int::from(m[k]).mod_floor(&Int::from(o.h as i64));
            assert_eq!(
                chain_class(rd, chain, &b.lambda, o.h),
                want,
                "standard form must realize the requested Kottwitz residues"
            );
            k += 1;
        }
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::presets;
    use crate::{ivec, rat, to_rat_vec};
    use num_traits::Signed;

    fn p(name: &str, params: &[(&str, i64)]) -> RootDatum {
        presets::preset(name, &params.iter().map(|(k, v)| (k.to_string(), *v)).collect()).unwrap()
    }

    fn full(rd: &RootDatum) -> LeviSubset {
        LeviSubset::full(rd.n_simple())
    }

    #[test]
    fn newton_frozen_examples() {
        let rd = p("GL", &[("n", 2)]);
        let b = BRep::new(&rd, ivec(&[1, 0]), rd.weyl_simple(0), None).unwrap();
        let nu = newton_point(&rd, &b).unwrap();
        assert_eq!(nu.dom, vec![rat(1, 2), rat(1, 2)]);
        assert_eq!(nu.raw, nu.dom);
        assert_eq!(nu.psi_order, 2);

        let b = BRep::translation(&rd, ivec(&[2, 1])).unwrap();
        let nu = newton_point(&rd, &b).unwrap();
        assert_eq!(nu.dom, to_rat_vec(&ivec(&[2, 1])));

        let rd = p("GL", &[("n", 3)]);
        let cycle = rd.weyl_from_word(&[0, 1]).unwrap();
        // e1 -> e2 -> e3 -> e1
        assert_eq!(cycle.act_cov(&ivec(&[1, 0, 0])), ivec(&[0, 1, 0]));
        assert_eq!(cycle.act_cov(&ivec(&[0, 0, 1])), ivec(&[1, 0, 0]));
        let b = BRep::new(&rd, ivec(&[1, 0, 0]), cycle, None).unwrap();
        let nu = newton_point(&rd, &b).unwrap();
        assert_eq!(nu.dom, vec![rat(1, 3), rat(1, 3), rat(1, 3)]);
    }

    #[test]
    fn newton_conjugation_covariance() {
        let rd = p("GL", &[("n", 3)]);
        let b = BRep::new(&rd, ivec(&[2, 0, -1]), rd.weyl_simple(1), None).unwrap();
        let reference = newton_point(&rd, &b).unwrap().dom;
        for u in rd.weyl_group(&full(&rd)).iter() {
            let lam = u.act_cov(&b.lambda);
            let w = rd.weyl_mul(&rd.weyl_mul(u, &b.w), &rd.weyl_inv(&rd.sigma_conj(u)));
            let bb = BRep::new(&rd, lam, w, None).unwrap();
            assert_eq!(newton_point(&rd, &bb).unwrap().dom, reference);
        }
    }

    #[test]
    fn kottwitz_frozen_examples() {
        let rd = p("GL", &[("n", 2)]);
        let b = BRep::translation(&rd, ivec(&[1, 0])).unwrap();
        let k = kottwitz_point(&rd, &b, &full(&rd)).unwrap();
        assert_eq!(k.coords.len(), 1);
        assert_eq!(k.coords[0].abs(), Int::one());
        let b2 = BRep::translation(&rd, ivec(&[0, 1])).unwrap();
        assert_eq!(kottwitz_point(&rd, &b2, &full(&rd)).unwrap(), k);

        // lambda in the coroot lattice maps to zero
        let rd = p("GL", &[("n", 3)]);
        let b = BRep::translation(&rd, ivec(&[1, -1, 0])).unwrap();
        let k = kottwitz_point(&rd, &b, &full(&rd)).unwrap();
        assert!(k.coords.iter().all(|x| x.is_zero()));

        // rank-one restriction of scalars: coinvariants collapse the swap
        let rd = p("ResGL", &[("n", 1), ("d", 2)]);
        let b = BRep::translation(&rd, ivec(&[1, 0])).unwrap();
        let k = kottwitz_point(&rd, &b, &LeviSubset::torus()).unwrap();
        assert_eq!(k.coords.len(), 1);
        assert_eq!(k.coords[0].abs(), Int::one());
        let b2 = BRep::translation(&rd, ivec(&[0, 1])).unwrap();
        assert_eq!(kottwitz_point(&rd, &b2, &LeviSubset::torus()).unwrap(), k);
    }

    #[test]
    fn basic_and_centralizer() {
        let rd = p("GL", &[("n", 2)]);
        let b = BRep::new(&rd, ivec(&[1, 0]), rd.weyl_simple(0), None).unwrap();
        assert!(is_basic(&rd, &b, &full(&rd)).unwrap());
        assert_eq!(centralizer_levi(&rd, &b).unwrap(), full(&rd));

        let b = BRep::translation(&rd, ivec(&[1, 0])).unwrap();
        assert!(!is_basic(&rd, &b, &full(&rd)).unwrap());
        assert_eq!(centralizer_levi(&rd, &b).unwrap(), LeviSubset::torus());

        let b = BRep::translation(&rd, ivec(&[3, 3])).unwrap();
        assert!(is_basic(&rd, &b, &full(&rd)).unwrap());
    }

    #[test]
    fn superbasic_tests() {
        let rd = p("GL", &[("n", 2)]);
        let b = BRep::new(&rd, ivec(&[1, 0]), rd.weyl_simple(0), None).unwrap();
        assert!(is_superbasic(&rd, &b, &full(&rd)).unwrap());
        // total 2 on a factor with h = 2: fails the coprimality test
        let b = BRep::new(&rd, ivec(&[1, 1]), rd.weyl_simple(0), None).unwrap();
        assert!(!is_superbasic(&rd, &b, &full(&rd)).unwrap());
        // not basic at all
        let b = BRep::translation(&rd, ivec(&[1, 0])).unwrap();
        assert!(!is_superbasic(&rd, &b, &full(&rd)).unwrap());
        // in the torus the conditions are vacuous
        let b = BRep::translation(&rd, ivec(&[5, 3])).unwrap();
        assert!(is_superbasic(&rd, &b, &LeviSubset::torus()).unwrap());

        // reversed return map: unitary in three variables
        let rd = p("GU", &[("n", 3)]);
        let b = BRep::translation(&rd, ivec(&[0, 0, 0, 0])).unwrap();
        assert!(matches!(
            is_superbasic(&rd, &b, &full(&rd)),
            Err(Error::SuperbasicUnsupported(_))
        ));

        // multiple bond: symplectic similitudes
        let rd = p("GSp", &[("n", 4)]);
        let b = BRep::translation(&rd, ivec(&[0, 0, 0])).unwrap();
        assert!(matches!(
            is_superbasic(&rd, &b, &full(&rd)),
            Err(Error::SuperbasicUnsupported(_))
        ));
    }

    #[test]
    fn standard_form_frozen_examples() {
        let rd = p("GL", &[("n", 2)]);
        let b = superbasic_standard_form(&rd, &full(&rd), &[1]).unwrap();
        assert_eq!(b.lambda, ivec(&[1, 0]));
        assert_eq!(b.w, rd.weyl_simple(0));
        assert_eq!(newton_point(&rd, &b).unwrap().dom, vec![rat(1, 2), rat(1, 2)]);

        let rd = p("GL", &[("n", 3)]);
        let b = superbasic_standard_form(&rd, &full(&rd), &[1]).unwrap();
        assert_eq!(b.lambda, ivec(&[1, 0, 0]));
        assert_eq!(b.w, rd.weyl_from_word(&[0, 1]).unwrap());
        // power two: shifts compose
        let b2 = superbasic_standard_form(&rd, &full(&rd), &[2]).unwrap();
        assert_eq!(b2.lambda, ivec(&[1, 1, 0]));
        // negative power
        let bm = superbasic_standard_form(&rd, &full(&rd), &[-1]).unwrap();
        assert_eq!(bm.lambda, ivec(&[0, 0, -1]));
        assert!(is_superbasic(&rd, &bm, &full(&rd)).unwrap());

        // two copies swapped by sigma: one factor may carry zero
        let rd = p("ResGL", &[("n", 2), ("d", 2)]);
        let b = superbasic_standard_form(&rd, &full(&rd), &[1, 0]).unwrap();
        assert_eq!(b.lambda, ivec(&[1, 0, 0, 0]));
        assert_eq!(b.w, rd.weyl_simple(0));
        assert!(is_superbasic(&rd, &b, &full(&rd)).unwrap());

        // adjoint rank one admits the form; simply connected rank one cannot
        let rd = p("PGL", &[("n", 2)]);
        let b = superbasic_standard_form(&rd, &full(&rd), &[1]).unwrap();
        assert_eq!(b.lambda, ivec(&[1]));
        let rd = p("SL", &[("n", 2)]);
        assert!(matches!(
            superbasic_standard_form(&rd, &full(&rd), &[1]),
            Err(Error::StandardFormUnavailable(_))
        ));

        // coprimality failure is rejected up front
        let rd = p("GL", &[("n", 2)]);
        assert!(matches!(
            superbasic_standard_form(&rd, &full(&rd), &[2]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn basic_kappa_determines_newton() {
        // over all small (lambda, w) in rank two, basic classes with equal
        // Kottwitz point have equal Newton point
        let rd = p("GL", &[("n", 2)]);
        let mut seen: Vec<(Vec<Int>, Vec<Rat>)> = Vec::new();
        let l = full(&rd);
        for a in -2..=2i64 {
            for c in -2..=2i64 {
                for w in rd.weyl_group(&l).iter() {
                    let b = BRep::new(&rd, ivec(&[a, c]), w.clone(), None).unwrap();
                    if !is_basic(&rd, &b, &l).unwrap() {
                        continue;
                    }
                    let k = kottwitz_point(&rd, &b, &l).unwrap();
                    let nu = newton_point(&rd, &b).unwrap().dom;
                    if let Some((_, prev)) = seen.iter().find(|(kk, _)| *kk == k.coords) {
                        assert_eq!(*prev, nu, "equal Kottwitz point forces equal Newton point");
                    } else {
                        seen.push((k.coords, nu));
                    }
                }
            }
        }
        assert!(seen.len() >= 5);
    }

    #[test]
    fn brep_spec_round_trip() {
        let rd = p("GU", &[("n", 5)]);
        let spec = BRepSpec {
            lambda: ivec(&[1, 1, 0, 1, 0, 1]),
            w_word: vec![0, 1],
            levi: Some(vec![0, 1]),
        };
        let b = BRep::from_spec(&rd, &spec).unwrap();
        let back = b.to_spec();
        assert_eq!(back.lambda, spec.lambda);
        assert_eq!(back.levi, spec.levi);
        // a word outside the declared Levi is rejected
        let bad = BRepSpec { lambda: ivec(&[0; 6]), w_word: vec![3], levi: Some(vec![0, 1]) };
        assert!(BRep::from_spec(&rd, &bad).is_err());
    }
}
