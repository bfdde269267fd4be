//! Finite indexing sets of minuscule cocharacter lifts and the move graph on
//! them.
//!
//! For a sigma-stable standard Levi `M` inside the ambient group, classes in
//! pi1(M) are represented by their unique M-dominant, M-minuscule cocharacter
//! lifts.  The indexing set collects the classes whose lift is conjugate to a
//! fixed target cocharacter under a chosen ambient reflection scope (the full
//! group, or a closed subsystem) and whose Kottwitz class matches a given
//! representative.  Moves between classes differ by `alpha - sigma^m(alpha)`
//! on coroots for a root `alpha` outside the Levi; chains of such moves are
//! found by breadth-first search and refined into steps that are immediate in
//! at least one direction.  The module also classifies sigma-orbits of roots
//! (closure, component type, adaptedness, distinguished neighbors), checks
//! that negative-pairing adapted coroots generate the full coroot lattice,
//! and decomposes Weyl-orbit relations into pairwise-orthogonal reflections.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::isocrystal::{kappa_of_cochar, kottwitz_point, BRep, CoinvClass};
use crate::pi1lat::Pi1Group;
use crate::rootdata::{LeviSubset, RootDatum, WeylElement};
use crate::{int, Int};

/// Cap on the size of a reflection orbit enumerated by BFS.
const MAX_ORBIT: usize = 1_000_000;

fn vadd(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn vsub(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

// ---- minuscule lifts ----

/// Sum of squared pairings with the positive roots of the Levi: a Weyl-
/// invariant positive semidefinite integer measure used to certify descent.
fn levi_pairing_measure(rd: &RootDatum, pos: &[usize], v: &[Int]) -> Int {
    pos.iter()
        .map(|&id| {
            let p = rd.pairing(&rd.root(id).ch, v);
            &p * &p
        })
        .sum()
}

/// The unique M-dominant, M-minuscule representative of the class of `rep`
/// in pi1(M), computed by greedy descent: dominantize, and while some
/// positive root of the Levi pairs to 2 or more, subtract its coroot and
/// dominantize again.  Each step strictly decreases the invariant measure,
/// so termination is certified; failure to reach a minuscule vector is an
/// internal error (it would contradict the lift bijection).
pub fn minuscule_lift(rd: &RootDatum, m: &LeviSubset, rep: &[Int]) -> Result<Vec<Int>> {
    if rep.len() != rd.rank {
        return Err(Error::InvalidInput(format!(
            "cocharacter has rank {}, expected {}",
            rep.len(),
            rd.rank
        )));
    }
    let pos = rd.levi_positive_root_ids(m);
    let mut cur = rd.dominant_rep(rep, m).0;
    let mut q = levi_pairing_measure(rd, &pos, &cur);
    loop {
        let hit = pos
            .iter()
            .copied()
            .find(|&id| rd.pairing(&rd.root(id).ch, &cur) >= int(2));
        let Some(id) = hit else { break };
        cur = vsub(&cur, &rd.root(id).cov);
        cur = rd.dominant_rep(&cur, m).0;
        let q2 = levi_pairing_measure(rd, &pos, &cur);
        if q2 >= q {
            return Err(Error::Internal(
                "minuscule descent failed to decrease the invariant measure".into(),
            ));
        }
        q = q2;
    }
    if !rd.is_dominant(&cur, m) || !rd.is_minuscule(&cur, m) {
        return Err(Error::Internal(
            "minuscule descent terminated on a non-minuscule vector".into(),
        ));
    }
    // class preservation: rep and cur agree in pi1(M)
    let p = Pi1Group::new(rd, m);
    if p.project(rep) != p.project(&cur) {
        return Err(Error::Internal("minuscule descent changed the pi1 class".into()));
    }
    Ok(cur)
}

/// The distinguished Weyl element attached to a lift: (longest element of the
/// centralizer of `mu_x` in M) times (longest element of M).  Satisfies
/// w_x^{-1}(mu_x) = w_{0,M}(mu_x).
pub fn w_x_compute(rd: &RootDatum, m: &LeviSubset, mu_x: &[Int]) -> Result<WeylElement> {
    if mu_x.len() != rd.rank {
        return Err(Error::InvalidInput("cocharacter rank mismatch".into()));
    }
    if !rd.is_dominant(mu_x, m) || !rd.is_minuscule(mu_x, m) {
        return Err(Error::Precondition(
            "w_x needs an M-dominant, M-minuscule lift".into(),
        ));
    }
    let zero_idx: Vec<usize> = m
        .indices()
        .into_iter()
        .filter(|&i| rd.pairing(&rd.simple_ch[i], mu_x).is_zero())
        .collect();
    let m_x = LeviSubset::from_indices(&zero_idx);
    let w0x = rd.longest_element(&m_x);
    let w0m = rd.longest_element(m);
    let w = rd.weyl_mul(&w0x, &w0m);
    if rd.weyl_inv(&w).act_cov(mu_x) != w0m.act_cov(mu_x) {
        return Err(Error::Internal("w_x postcondition failed".into()));
    }
    Ok(w)
}

// ---- reflection scopes and indexing sets ----

/// Dominant representative under the reflections at the given basis roots.
fn scope_dominant(rd: &RootDatum, basis: &[usize], v: &[Int]) -> Vec<Int> {
    let mut cur = v.to_vec();
    loop {
        let hit = basis
            .iter()
            .copied()
            .find(|&id| rd.pairing(&rd.root(id).ch, &cur).is_negative());
        let Some(id) = hit else { return cur };
        cur = rd.reflection(id).act_cov(&cur);
    }
}

/// Orbit of `v` under the reflections at the given basis roots.
fn scope_orbit(rd: &RootDatum, basis: &[usize], v: &[Int]) -> Result<BTreeSet<Vec<Int>>> {
    let mut seen: BTreeSet<Vec<Int>> = BTreeSet::new();
    let mut queue: VecDeque<Vec<Int>> = VecDeque::new();
    seen.insert(v.to_vec());
    queue.push_back(v.to_vec());
    while let Some(cur) = queue.pop_front() {
        for &id in basis {
            let img = rd.reflection(id).act_cov(&cur);
            if seen.insert(img.clone()) {
                if seen.len() > MAX_ORBIT {
                    return Err(Error::ResourceExhausted(format!(
                        "reflection orbit exceeds {MAX_ORBIT} vectors"
                    )));
                }
                queue.push_back(img);
            }
        }
    }
    Ok(seen)
}

/// One class of the indexing set: canonical pi1(M) coordinates and the
/// M-dominant, M-minuscule cocharacter lift.
#[derive(Clone, Debug, Serialize)]
pub struct ISetElement {
    #[serde(with = "crate::serial::ivec")]
    pub x: Vec<Int>,
    #[serde(with = "crate::serial::ivec")]
    pub mu_x: Vec<Int>,
}

/// The finite set of pi1(M)-classes whose lift is scope-conjugate to the
/// target cocharacter and whose Kottwitz class matches the representative.
#[derive(Clone, Debug, Serialize)]
pub struct ISet {
    pub levi: LeviSubset,
    /// Simple system of the ambient scope used for conjugacy of lifts.
    pub scope_basis: Vec<usize>,
    #[serde(with = "crate::serial::ivec")]
    pub mu_dom: Vec<Int>,
    pub kappa: CoinvClass,
    pub elements: Vec<ISetElement>,
}

impl ISet {
    /// Index of the element with the given pi1(M) coordinates.
    pub fn find(&self, coords: &[Int]) -> Option<usize> {
        self.elements.iter().position(|e| e.x == coords)
    }
}

fn enumerate_scoped(
    rd: &RootDatum,
    basis: &[usize],
    mu_ref: &[Int],
    b: &BRep,
    m: &LeviSubset,
) -> Result<ISet> {
    if mu_ref.len() != rd.rank {
        return Err(Error::InvalidInput("cocharacter rank mismatch".into()));
    }
    if !rd.levi_is_sigma_stable(m) {
        return Err(Error::Precondition(
            "indexing set needs a sigma-stable Levi".into(),
        ));
    }
    let pi1m = Pi1Group::new(rd, m);
    let kappa = kottwitz_point(rd, b, m)?;
    let mu_dom = scope_dominant(rd, basis, mu_ref);
    let orbit = scope_orbit(rd, basis, &mu_dom)?;
    let mut elements: Vec<ISetElement> = Vec::new();
    for v in orbit {
        if rd.is_dominant(&v, m) && rd.is_minuscule(&v, m) {
            let k = kappa_of_cochar(rd, &pi1m, &v)?;
            if k == kappa {
                elements.push(ISetElement { x: pi1m.project(&v), mu_x: v });
            }
        }
    }
    elements.sort_by(|a, b| a.mu_x.cmp(&b.mu_x));
    let distinct: BTreeSet<&Vec<Int>> = elements.iter().map(|e| &e.x).collect();
    if distinct.len() != elements.len() {
        return Err(Error::Internal(
            "two distinct dominant minuscule lifts share a pi1 class".into(),
        ));
    }
    Ok(ISet { levi: m.clone(), scope_basis: basis.to_vec(), mu_dom, kappa, elements })
}

/// Enumerate the indexing set with the full group as ambient scope.  The
/// target must be minuscule for the full group; the result may be empty.
pub fn iset_enumerate(rd: &RootDatum, mu: &[Int], b: &BRep, m: &LeviSubset) -> Result<ISet> {
    let full = LeviSubset::full(rd.n_simple());
    if mu.len() == rd.rank && !rd.is_minuscule(mu, &full) {
        return Err(Error::NotMinuscule(
            "indexing set needs a minuscule target cocharacter".into(),
        ));
    }
    let basis: Vec<usize> = (0..rd.n_simple()).map(|i| rd.simple_root_id(i)).collect();
    enumerate_scoped(rd, &basis, mu, b, m)
}

/// Enumerate the indexing set inside a closed subsystem given by its simple
/// system (for example the closure attached to a root orbit).
pub fn iset_enumerate_in(
    rd: &RootDatum,
    basis: &[usize],
    mu_ref: &[Int],
    b: &BRep,
    m: &LeviSubset,
) -> Result<ISet> {
    enumerate_scoped(rd, basis, mu_ref, b, m)
}

// ---- adapted roots ----

fn require_outside_levi(rd: &RootDatum, m: &LeviSubset, alpha_id: usize) -> Result<()> {
    let root = rd.root(alpha_id);
    if !root.positive || root.support().iter().all(|i| m.contains(*i)) {
        return Err(Error::Precondition(
            "root must be positive and outside the Levi".into(),
        ));
    }
    Ok(())
}

/// A positive root outside the Levi is adapted when its coroot pairs to 0 or
/// -1 with every positive root of the Levi (anti-dominant with all pairings
/// bounded by one in absolute value).
pub fn is_adapted(rd: &RootDatum, m: &LeviSubset, alpha_id: usize) -> Result<bool> {
    require_outside_levi(rd, m, alpha_id)?;
    let cov = &rd.root(alpha_id).cov;
    Ok(rd.levi_positive_root_ids(m).into_iter().all(|bid| {
        let p = rd.pairing(&rd.root(bid).ch, cov);
        p.is_zero() || p == int(-1)
    }))
}

/// The representative of the Weyl-orbit of a root under the Levi's Weyl group
/// whose coroot is anti-dominant for the Levi.
fn anti_dominant_root(rd: &RootDatum, m: &LeviSubset, id: usize) -> usize {
    let mut cur = id;
    loop {
        let hit = m
            .indices()
            .into_iter()
            .find(|&i| rd.pairing(&rd.simple_ch[i], &rd.root(cur).cov).is_positive());
        let Some(i) = hit else { return cur };
        let cov = rd.weyl_simple(i).act_cov(&rd.root(cur).cov);
        cur = rd.root_id_by_cov(&cov).expect("Weyl image of a coroot is a coroot");
    }
}

/// Replace a positive root outside the Levi by an adapted one with the same
/// coroot class in pi1(M): take the anti-dominant orbit representative, and
/// while some positive Levi root pairs below -1 with its coroot, pass to the
/// root whose coroot is the (longer) sum of the two coroots and re-normalize.
pub fn adapted_modify(rd: &RootDatum, m: &LeviSubset, alpha_id: usize) -> Result<usize> {
    require_outside_levi(rd, m, alpha_id)?;
    let mut cur = anti_dominant_root(rd, m, alpha_id);
    let mut steps = 0usize;
    loop {
        if is_adapted(rd, m, cur)? {
            break;
        }
        let bad = rd
            .levi_positive_root_ids(m)
            .into_iter()
            .find(|&bid| rd.pairing(&rd.root(bid).ch, &rd.root(cur).cov) < int(-1))
            .ok_or_else(|| {
                Error::Internal("non-adapted anti-dominant root without a deep pairing".into())
            })?;
        let sum = vadd(&rd.root(cur).cov, &rd.root(bad).cov);
        let next = rd.root_id_by_cov(&sum).ok_or_else(|| {
            Error::Internal("coroot correction is not a coroot".into())
        })?;
        cur = anti_dominant_root(rd, m, next);
        steps += 1;
        if steps > rd.n_roots() {
            return Err(Error::Internal("adapted correction did not terminate".into()));
        }
    }
    // same coroot class in pi1(M), and still outside the Levi
    require_outside_levi(rd, m, cur)?;
    let p = Pi1Group::new(rd, m);
    if p.project(&rd.root(alpha_id).cov) != p.project(&rd.root(cur).cov) {
        return Err(Error::Internal("adapted correction changed the coroot class".into()));
    }
    Ok(cur)
}

// ---- orbit classification ----

/// Count of orbit members per Dynkin component of the orbit closure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OmegaType {
    I,
    II,
    III,
}

/// A sigma-orbit of roots outside the Levi, together with its closure data:
/// the smallest closed symmetric subsystem containing the orbit and the Levi
/// roots, the per-component membership count (the type), adaptedness, and the
/// distinguished common-neighbor and composite roots when they exist.
#[derive(Clone, Debug, Serialize)]
pub struct OmegaClass {
    /// Orbit in sigma-order starting from the minimal root id.
    pub orbit: Vec<usize>,
    pub orbit_id: usize,
    pub adapted: bool,
    pub omega_type: OmegaType,
    /// Minimal positive shift returning the base root's component to itself.
    pub period: usize,
    /// All roots of the closure (positive and negative).
    pub closure: Vec<usize>,
    /// Simple system of the closure with respect to ambient positivity.
    pub basis: Vec<usize>,
    /// Common neighbor inside the closure's Dynkin diagram (types II/III,
    /// absent when the orbit members are themselves adjacent).
    pub beta: Option<usize>,
    /// Composite root: base root for type I, sum with the distinguished
    /// neighbors for types II/III (only defined when the orbit is adapted).
    pub alpha_tilde: Option<usize>,
}

/// Component index of a root inside an orthogonal decomposition of a basis.
fn component_of(
    rd: &RootDatum,
    components: &[Vec<usize>],
    root_id: usize,
) -> Result<usize> {
    let mut found = None;
    for (ci, comp) in components.iter().enumerate() {
        if comp.iter().any(|&bid| {
            !rd.pairing(&rd.root(bid).ch, &rd.root(root_id).cov).is_zero()
        }) {
            if found.is_some() {
                return Err(Error::Internal(
                    "root meets two components of the closure basis".into(),
                ));
            }
            found = Some(ci);
        }
    }
    found.ok_or_else(|| Error::Internal("root orthogonal to the whole closure basis".into()))
}

/// Classify the sigma-orbit of a positive root outside the Levi.
pub fn omega_classify(rd: &RootDatum, m: &LeviSubset, alpha_id: usize) -> Result<OmegaClass> {
    require_outside_levi(rd, m, alpha_id)?;
    let raw_orbit = rd.sigma_orbit_of_root(alpha_id);
    let min_pos = raw_orbit
        .iter()
        .enumerate()
        .min_by_key(|(_, &id)| id)
        .map(|(k, _)| k)
        .unwrap();
    let orbit: Vec<usize> =
        (0..raw_orbit.len()).map(|k| raw_orbit[(min_pos + k) % raw_orbit.len()]).collect();
    let orbit_id = orbit[0];
    for &id in &orbit {
        require_outside_levi(rd, m, id)?;
    }

    let mut adapted_flags = Vec::new();
    for &id in &orbit {
        adapted_flags.push(is_adapted(rd, m, id)?);
    }
    let adapted = adapted_flags[0];
    if adapted_flags.iter().any(|&f| f != adapted) {
        return Err(Error::Internal("adaptedness is not constant on a sigma-orbit".into()));
    }

    let mut seed: Vec<usize> = rd.levi_root_ids(m);
    seed.extend(orbit.iter().copied());
    let closure = rd.closed_symmetric_closure(&seed);
    let basis = rd.subsystem_basis(&closure);
    let components = rd.components_of(&basis);

    let comp_of_member: Vec<usize> = orbit
        .iter()
        .map(|&id| component_of(rd, &components, id))
        .collect::<Result<_>>()?;
    let n = orbit.len();
    let period = (1..=n)
        .find(|&i| comp_of_member[i % n] == comp_of_member[0])
        .expect("component recurs within the orbit");
    if !n.is_multiple_of(period) {
        return Err(Error::Internal("orbit length is not a multiple of the period".into()));
    }
    let count = n / period;
    // every component meeting the orbit must meet it in `count` roots
    let mut tally: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in &comp_of_member {
        *tally.entry(c).or_insert(0) += 1;
    }
    if tally.values().any(|&v| v != count) {
        return Err(Error::Internal("orbit meets components unevenly".into()));
    }
    let omega_type = match count {
        1 => OmegaType::I,
        2 => OmegaType::II,
        3 => OmegaType::III,
        _ => {
            return Err(Error::Precondition(
                "orbit meets a component in more than three roots".into(),
            ))
        }
    };

    let (beta, alpha_tilde) = match omega_type {
        OmegaType::I => (None, Some(orbit_id)),
        OmegaType::II | OmegaType::III if !adapted => (None, None),
        OmegaType::II => {
            let a = orbit_id;
            let ad = orbit[period % n];
            if basis.binary_search(&a).is_err() || basis.binary_search(&ad).is_err() {
                return Err(Error::Internal(
                    "adapted type-II orbit members are not simple in the closure".into(),
                ));
            }
            if !rd.pairing(&rd.root(a).ch, &rd.root(ad).cov).is_zero() {
                // adjacent: composite is the two-term sum
                let sum_ch = vadd(&rd.root(a).ch, &rd.root(ad).ch);
                let tid = rd.root_id_by_ch(&sum_ch).ok_or_else(|| {
                    Error::Internal("two-term composite is not a root".into())
                })?;
                (None, Some(tid))
            } else {
                let neighbors: Vec<usize> = basis
                    .iter()
                    .copied()
                    .filter(|&bid| {
                        bid != a
                            && bid != ad
                            && !rd.pairing(&rd.root(bid).ch, &rd.root(a).cov).is_zero()
                            && !rd.pairing(&rd.root(bid).ch, &rd.root(ad).cov).is_zero()
                    })
                    .collect();
                if neighbors.len() != 1 {
                    return Err(Error::Internal(
                        "type-II orbit members lack a unique common neighbor".into(),
                    ));
                }
                let beta_id = neighbors[0];
                let sum_ch = vadd(
                    &vadd(&rd.root(a).ch, &rd.root(beta_id).ch),
                    &rd.root(ad).ch,
                );
                let tid = rd.root_id_by_ch(&sum_ch).ok_or_else(|| {
                    Error::Internal("three-term composite is not a root".into())
                })?;
                (Some(beta_id), Some(tid))
            }
        }
        OmegaType::III => {
            let a = orbit_id;
            let ad = orbit[period % n];
            let a2d = orbit[(2 * period) % n];
            let neighbors: Vec<usize> = basis
                .iter()
                .copied()
                .filter(|&bid| {
                    ![a, ad, a2d].contains(&bid)
                        && [a, ad, a2d].iter().all(|&oid| {
                            !rd.pairing(&rd.root(bid).ch, &rd.root(oid).cov).is_zero()
                        })
                })
                .collect();
            if neighbors.len() != 1 {
                return Err(Error::Internal(
                    "type-III orbit members lack a unique common neighbor".into(),
                ));
            }
            let beta_id = neighbors[0];
            let mut sum_ch = vadd(&rd.root(a).ch, &rd.root(ad).ch);
            sum_ch = vadd(&sum_ch, &rd.root(a2d).ch);
            sum_ch = vadd(&sum_ch, &rd.root(beta_id).ch);
            let tid = rd.root_id_by_ch(&sum_ch).ok_or_else(|| {
                Error::Internal("four-term composite is not a root".into())
            })?;
            (Some(beta_id), Some(tid))
        }
    };
    if let Some(t) = alpha_tilde {
        if !rd.root(t).positive {
            return Err(Error::Internal("composite root is not positive".into()));
        }
    }

    Ok(OmegaClass {
        orbit,
        orbit_id,
        adapted,
        omega_type,
        period,
        closure,
        basis,
        beta,
        alpha_tilde,
    })
}

// ---- chains ----

/// One certified move: the endpoints differ by the coroot of `alpha` minus
/// the coroot of `alpha_prime` (two roots in one sigma-orbit) in pi1(M).
#[derive(Clone, Debug, Serialize)]
pub struct ChainStep {
    #[serde(with = "crate::serial::ivec")]
    pub from: Vec<Int>,
    #[serde(with = "crate::serial::ivec")]
    pub to: Vec<Int>,
    pub alpha: usize,
    pub alpha_prime: usize,
    pub orbit_id: usize,
    pub immediate: bool,
}

/// A path in the move graph with per-step certificates.
#[derive(Clone, Debug, Serialize)]
pub struct ChainWitness {
    #[serde(with = "crate::serial::ivec")]
    pub start: Vec<Int>,
    #[serde(with = "crate::serial::ivec")]
    pub end: Vec<Int>,
    pub steps: Vec<ChainStep>,
}

/// pi1(M)-coordinates reached from `coords` by adding cov(a) - cov(b).
fn move_coords(pi1m: &Pi1Group, rd: &RootDatum, coords: &[Int], a: usize, b: usize) -> Vec<Int> {
    let diff = vsub(&rd.root(a).cov, &rd.root(b).cov);
    pi1m.pres.add(coords, &pi1m.project(&diff))
}

/// Find a path between two classes of the indexing set along certified
/// moves, by breadth-first search with lexicographic tie-breaking on the
/// pi1(M) coordinates of the successor.  Failure to find one contradicts the
/// convexity of the indexing set and is reported as a connectivity error.
pub fn convexity_chain(
    rd: &RootDatum,
    iset: &ISet,
    from: &[Int],
    to: &[Int],
) -> Result<ChainWitness> {
    let m = &iset.levi;
    let start_idx = iset
        .find(from)
        .ok_or_else(|| Error::Precondition("chain start is not in the indexing set".into()))?;
    let end_idx = iset
        .find(to)
        .ok_or_else(|| Error::Precondition("chain end is not in the indexing set".into()))?;
    let pi1m = Pi1Group::new(rd, m);
    let orbits = rd.sigma_orbits_on(&rd.phi_n_ids(m))?;

    let index_of: BTreeMap<&Vec<Int>, usize> =
        iset.elements.iter().enumerate().map(|(i, e)| (&e.x, i)).collect();
    let mut parent: Vec<Option<(usize, usize, usize, usize)>> = vec![None; iset.elements.len()];
    let mut visited = vec![false; iset.elements.len()];
    visited[start_idx] = true;
    let mut queue = VecDeque::new();
    queue.push_back(start_idx);
    'bfs: while let Some(u) = queue.pop_front() {
        if u == end_idx {
            break 'bfs;
        }
        // deterministic expansion: (successor coords, alpha, alpha_prime)
        let mut nbrs: Vec<(Vec<Int>, usize, usize, usize)> = Vec::new();
        for orbit in &orbits {
            let oid = orbit[0];
            for &a in orbit {
                for &b in orbit {
                    if a == b {
                        continue;
                    }
                    let t = move_coords(&pi1m, rd, &iset.elements[u].x, a, b);
                    if t != iset.elements[u].x && index_of.contains_key(&t) {
                        nbrs.push((t, a, b, oid));
                    }
                }
            }
        }
        nbrs.sort_by(|x, y| (&x.0, x.1, x.2).cmp(&(&y.0, y.1, y.2)));
        for (t, a, b, oid) in nbrs {
            let j = index_of[&t];
            if !visited[j] {
                visited[j] = true;
                parent[j] = Some((u, a, b, oid));
                queue.push_back(j);
            }
        }
    }
    if !visited[end_idx] {
        return Err(Error::Disconnected(
            "indexing-set classes are not connected by certified moves".into(),
        ));
    }

    let mut rev: Vec<(usize, usize, usize, usize, usize)> = Vec::new();
    let mut cur = end_idx;
    while cur != start_idx {
        let (p, a, b, oid) = parent[cur].expect("path reconstruction");
        rev.push((p, cur, a, b, oid));
        cur = p;
    }
    rev.reverse();
    let mut steps = Vec::new();
    for (p, c, a, b, oid) in rev {
        let f = iset.elements[p].x.clone();
        let t = iset.elements[c].x.clone();
        let immediate = pair_immediate(rd, iset, &pi1m, &f, &t, a, b)?;
        steps.push(ChainStep { from: f, to: t, alpha: a, alpha_prime: b, orbit_id: oid, immediate });
    }
    Ok(ChainWitness { start: from.to_vec(), end: to.to_vec(), steps })
}

/// Canonical adapted presentation of a move: the adapted correction of
/// `alpha` and the smallest positive shift within its orbit realizing the
/// coordinate difference.
fn adapted_presentation(
    rd: &RootDatum,
    pi1m: &Pi1Group,
    m: &LeviSubset,
    from: &[Int],
    to: &[Int],
    alpha: usize,
) -> Result<(usize, usize)> {
    let a_ad = adapted_modify(rd, m, alpha)?;
    let orbit = rd.sigma_orbit_of_root(a_ad);
    for mm in 1..orbit.len() {
        if move_coords(pi1m, rd, from, a_ad, orbit[mm]) == to {
            return Ok((a_ad, mm));
        }
    }
    Err(Error::Internal(
        "move certificate does not match any shift of the adapted root".into(),
    ))
}

/// Type-dependent bound on the shift of an immediate move.
fn shift_bound_ok(omega: &OmegaClass, mm: usize) -> bool {
    let n = omega.orbit.len();
    match omega.omega_type {
        OmegaType::I => mm > 0 && mm < n,
        OmegaType::II => mm > 0 && 2 * mm <= n,
        OmegaType::III => mm > 0 && 3 * mm < 2 * n,
    }
}

/// First interior witness violating the exclusion condition of an immediate
/// move, if any: a shift `i` with 0 < i < mm such that the class shifted by
/// (sigma^i alpha - sigma^mm alpha) or by (alpha - sigma^i alpha) lies in the
/// indexing set.  Returns (i, family) with family 0 for the first form.
fn exclusion_witness(
    rd: &RootDatum,
    iset: &ISet,
    pi1m: &Pi1Group,
    from: &[Int],
    orbit: &[usize],
    mm: usize,
) -> Option<(usize, usize)> {
    for i in 1..mm {
        let c1 = move_coords(pi1m, rd, from, orbit[i], orbit[mm]);
        if iset.find(&c1).is_some() {
            return Some((i, 0));
        }
        let c2 = move_coords(pi1m, rd, from, orbit[0], orbit[i]);
        if iset.find(&c2).is_some() {
            return Some((i, 1));
        }
    }
    None
}

/// Whether the move from `x1` by (alpha - sigma^mm alpha) on coroots is
/// immediate: the shift satisfies the type bound of the orbit and no interior
/// shift produces another class of the indexing set.  `alpha` must be
/// adapted; `x2` must be the resulting class.
pub fn is_immediate(
    rd: &RootDatum,
    iset: &ISet,
    x1: &[Int],
    x2: &[Int],
    alpha: usize,
    mm: usize,
) -> Result<bool> {
    let m = &iset.levi;
    if iset.find(x1).is_none() || iset.find(x2).is_none() {
        return Err(Error::Precondition("endpoints must be in the indexing set".into()));
    }
    if !is_adapted(rd, m, alpha)? {
        return Err(Error::Precondition("move certificate root is not adapted".into()));
    }
    let omega = omega_classify(rd, m, alpha)?;
    let orbit = rd.sigma_orbit_of_root(alpha);
    let n = orbit.len();
    let mm = mm % n;
    if mm == 0 {
        return Err(Error::Precondition("trivial shift in a move certificate".into()));
    }
    let pi1m = Pi1Group::new(rd, m);
    if move_coords(&pi1m, rd, x1, orbit[0], orbit[mm]) != x2 {
        return Err(Error::Precondition(
            "endpoints do not differ by the certified move".into(),
        ));
    }
    if !shift_bound_ok(&omega, mm) {
        return Ok(false);
    }
    Ok(exclusion_witness(rd, iset, &pi1m, x1, &orbit, mm).is_none())
}

fn reverse_steps(steps: &mut [ChainStep]) {
    steps.reverse();
    for s in steps.iter_mut() {
        std::mem::swap(&mut s.from, &mut s.to);
        std::mem::swap(&mut s.alpha, &mut s.alpha_prime);
    }
}

/// Emit steps covering `from -> to` where the pair differs by a single move
/// certified through `alpha_hint`, splitting recursively at interior
/// witnesses until every emitted step is immediate in one direction.  Each
/// call re-canonicalizes the presentation (adapted root, smallest shift) so
/// emitted flags agree with independent re-verification.
fn refine_rec(
    rd: &RootDatum,
    iset: &ISet,
    pi1m: &Pi1Group,
    from: &[Int],
    to: &[Int],
    alpha_hint: usize,
    depth: usize,
    out: &mut Vec<ChainStep>,
) -> Result<()> {
    if depth > 200 {
        return Err(Error::Internal("immediate refinement recursion too deep".into()));
    }
    if from == to {
        return Ok(());
    }
    let (alpha, mm) = adapted_presentation(rd, pi1m, &iset.levi, from, to, alpha_hint)?;
    let orbit = rd.sigma_orbit_of_root(alpha);
    let n = orbit.len();
    if 2 * mm > n {
        // reverse orientation: to -> from differs by sigma^mm(alpha) shifted n - mm
        let mut tmp = Vec::new();
        refine_rec(rd, iset, pi1m, to, from, orbit[mm], depth + 1, &mut tmp)?;
        reverse_steps(&mut tmp);
        out.extend(tmp);
        return Ok(());
    }
    match exclusion_witness(rd, iset, pi1m, from, &orbit, mm) {
        None => {
            let omega = omega_classify(rd, &iset.levi, alpha)?;
            if !shift_bound_ok(&omega, mm) {
                return Err(Error::Internal(
                    "normalized shift violates the orbit-type bound".into(),
                ));
            }
            out.push(ChainStep {
                from: from.to_vec(),
                to: to.to_vec(),
                alpha: orbit[0],
                alpha_prime: orbit[mm],
                orbit_id: *orbit.iter().min().unwrap(),
                immediate: true,
            });
            Ok(())
        }
        Some((i, 0)) => {
            // interior class from + (sigma^i alpha - sigma^mm alpha)
            let mid = move_coords(pi1m, rd, from, orbit[i], orbit[mm]);
            refine_rec(rd, iset, pi1m, from, &mid, orbit[i], depth + 1, out)?;
            refine_rec(rd, iset, pi1m, &mid, to, orbit[0], depth + 1, out)
        }
        Some((i, _)) => {
            // interior class from + (alpha - sigma^i alpha)
            let mid = move_coords(pi1m, rd, from, orbit[0], orbit[i]);
            refine_rec(rd, iset, pi1m, from, &mid, orbit[0], depth + 1, out)?;
            refine_rec(rd, iset, pi1m, &mid, to, orbit[i], depth + 1, out)
        }
    }
}

/// Whether a certified step is immediate in the traversal direction, under
/// the canonical adapted presentation of its move.
fn step_immediate(
    rd: &RootDatum,
    iset: &ISet,
    pi1m: &Pi1Group,
    from: &[Int],
    to: &[Int],
    alpha: usize,
) -> Result<bool> {
    let (a_ad, mm) = adapted_presentation(rd, pi1m, &iset.levi, from, to, alpha)?;
    is_immediate(rd, iset, from, to, a_ad, mm)
}

/// Whether a certified step is immediate in at least one direction.
fn pair_immediate(
    rd: &RootDatum,
    iset: &ISet,
    pi1m: &Pi1Group,
    from: &[Int],
    to: &[Int],
    alpha: usize,
    alpha_prime: usize,
) -> Result<bool> {
    Ok(step_immediate(rd, iset, pi1m, from, to, alpha)?
        || step_immediate(rd, iset, pi1m, to, from, alpha_prime)?)
}

/// Refine every step of a chain into consecutive pairs that are immediate in
/// at least one direction, splitting at interior witnesses.
pub fn refine_immediate(rd: &RootDatum, iset: &ISet, chain: &ChainWitness) -> Result<ChainWitness> {
    let pi1m = Pi1Group::new(rd, &iset.levi);
    let mut steps = Vec::new();
    for s in &chain.steps {
        refine_rec(rd, iset, &pi1m, &s.from, &s.to, s.alpha, 0, &mut steps)?;
    }
    // the emitted path must chain up between the original endpoints
    let mut cur = chain.start.clone();
    for s in &steps {
        if s.from != cur {
            return Err(Error::Internal("refined steps do not chain up".into()));
        }
        cur = s.to.clone();
    }
    if cur != chain.end {
        return Err(Error::Internal("refined chain misses the endpoint".into()));
    }
    Ok(ChainWitness { start: chain.start.clone(), end: chain.end.clone(), steps })
}

/// Re-derive every certificate of a chain: endpoints and intermediate classes
/// lie in the indexing set, the two roots of each step are in one sigma-orbit
/// outside the Levi, coordinates differ by the certified coroots, and the
/// immediacy flags are reproduced.
pub fn chain_verify(rd: &RootDatum, iset: &ISet, chain: &ChainWitness) -> Result<()> {
    let pi1m = Pi1Group::new(rd, &iset.levi);
    let mut cur = chain.start.clone();
    if iset.find(&cur).is_none() {
        return Err(Error::Precondition("chain start outside the indexing set".into()));
    }
    for s in &chain.steps {
        if s.from != cur {
            return Err(Error::Precondition("chain steps do not concatenate".into()));
        }
        if iset.find(&s.to).is_none() {
            return Err(Error::Precondition("chain visits a class outside the set".into()));
        }
        let orbit = rd.sigma_orbit_of_root(s.alpha);
        if !orbit.contains(&s.alpha_prime) || *orbit.iter().min().unwrap() != s.orbit_id {
            return Err(Error::Precondition("step roots are not one sigma-orbit".into()));
        }
        require_outside_levi(rd, &iset.levi, s.alpha)?;
        if move_coords(&pi1m, rd, &s.from, s.alpha, s.alpha_prime) != s.to {
            return Err(Error::Precondition("step coordinates do not match the move".into()));
        }
        if s.immediate != pair_immediate(rd, iset, &pi1m, &s.from, &s.to, s.alpha, s.alpha_prime)? {
            return Err(Error::Precondition("step immediacy flag is wrong".into()));
        }
        cur = s.to.clone();
    }
    if cur != chain.end {
        return Err(Error::Precondition("chain does not reach its endpoint".into()));
    }
    Ok(())
}

// ---- generation of the coroot lattice ----

/// Outcome of the generation check: the negative-pairing adapted roots
/// outside the Levi, and whether their sigma-orbits together with the Levi
/// coroots span the full coroot lattice.
#[derive(Clone, Debug, Serialize)]
pub struct GenerationReport {
    pub generated: bool,
    /// Adapted positive roots outside the Levi pairing negatively with the
    /// base lift.
    pub c_roots: Vec<usize>,
}

/// Check that the coroots of the Levi together with all sigma-translates of
/// the adapted negative-pairing coroots generate the coroot lattice of the
/// full group (lattice equality via canonical bases).
pub fn generation_check(
    rd: &RootDatum,
    m: &LeviSubset,
    mu_x0: &[Int],
) -> Result<GenerationReport> {
    if mu_x0.len() != rd.rank {
        return Err(Error::InvalidInput("cocharacter rank mismatch".into()));
    }
    if !rd.levi_is_sigma_stable(m) {
        return Err(Error::Precondition("generation check needs a sigma-stable Levi".into()));
    }
    if !rd.is_dominant(mu_x0, m) || !rd.is_minuscule(mu_x0, m) {
        return Err(Error::Precondition(
            "generation check needs an M-dominant, M-minuscule lift".into(),
        ));
    }
    let mut c_roots = Vec::new();
    let mut gens: Vec<Vec<Int>> = m.indices().iter().map(|&i| rd.simple_cov[i].clone()).collect();
    for id in rd.phi_n_ids(m) {
        if is_adapted(rd, m, id)? && rd.pairing(&rd.root(id).ch, mu_x0).is_negative() {
            c_roots.push(id);
            for oid in rd.sigma_orbit_of_root(id) {
                gens.push(rd.root(oid).cov.clone());
            }
        }
    }
    let canon = crate::linalg::lattice_canon(&gens, rd.rank);
    let generated =
        (0..rd.n_simple()).all(|i| crate::linalg::lattice_contains(&canon, &rd.simple_cov[i]));
    Ok(GenerationReport { generated, c_roots })
}

// ---- Weyl-orbit conjugators ----

/// Side-aware Cartan integer between two roots of one multiset: the pairing
/// of the first root's character with the second root's coroot on the
/// character side, and the transpose on the coroot side.
fn cartan(rd: &RootDatum, a: usize, b: usize, cov_side: bool) -> Int {
    if cov_side {
        rd.pairing(&rd.root(b).ch, &rd.root(a).cov)
    } else {
        rd.pairing(&rd.root(a).ch, &rd.root(b).cov)
    }
}

/// Attempt the conjugator construction on one side: decompose the difference
/// into simple summands of the Levi, then merge negative-pairing pairs into
/// single roots until all pairings are non-negative.
fn conjugators_try(
    rd: &RootDatum,
    h: &LeviSubset,
    alpha_id: usize,
    gamma_id: usize,
    cov_side: bool,
) -> Option<Vec<usize>> {
    // multiset of simple summands with multiplicity
    let mut list: Vec<usize> = Vec::new();
    if cov_side {
        let cols: Vec<Vec<Int>> = (0..rd.n_simple()).map(|i| rd.simple_cov[i].clone()).collect();
        if cols.is_empty() {
            return None;
        }
        let a = crate::linalg::IMat::from_cols(cols);
        let d = vsub(&rd.root(gamma_id).cov, &rd.root(alpha_id).cov);
        let coeffs = crate::linalg::solve_int(&a, &d)?;
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_negative() || (!c.is_zero() && !h.contains(i)) {
                return None;
            }
            let mut k = c.clone();
            while k.is_positive() {
                list.push(rd.simple_root_id(i));
                k -= 1;
            }
        }
    } else {
        let d = vsub(&rd.root(gamma_id).expansion, &rd.root(alpha_id).expansion);
        for (i, c) in d.iter().enumerate() {
            if c.is_negative() || (!c.is_zero() && !h.contains(i)) {
                return None;
            }
            let mut k = c.clone();
            while k.is_positive() {
                list.push(rd.simple_root_id(i));
                k -= 1;
            }
        }
    }

    // merge pairs with negative pairing into their (root) sum
    loop {
        let mut merged = false;
        'scan: for p in 0..list.len() {
            for q in (p + 1)..list.len() {
                if cartan(rd, list[p], list[q], cov_side).is_negative() {
                    let sum_id = if cov_side {
                        rd.root_id_by_cov(&vadd(&rd.root(list[p]).cov, &rd.root(list[q]).cov))
                    } else {
                        rd.root_id_by_ch(&vadd(&rd.root(list[p]).ch, &rd.root(list[q]).ch))
                    }?;
                    let root = rd.root(sum_id);
                    if !root.positive || !root.support().iter().all(|i| h.contains(*i)) {
                        return None;
                    }
                    list[p] = sum_id;
                    list.remove(q);
                    merged = true;
                    break 'scan;
                }
            }
        }
        if !merged {
            break;
        }
    }
    list.sort_unstable();

    // full verification against the required properties
    for (k, &p) in list.iter().enumerate() {
        for &q in list.iter().skip(k + 1) {
            if !rd.pairing(&rd.root(p).ch, &rd.root(q).cov).is_zero() {
                return None;
            }
        }
    }
    let alpha = rd.root(alpha_id);
    let gamma = rd.root(gamma_id);
    let mut w = rd.weyl_identity();
    let mut height_sum = alpha.height.clone();
    for &p in &list {
        let pa = rd.pairing(&alpha.ch, &rd.root(p).cov);
        let pg = rd.pairing(&gamma.ch, &rd.root(p).cov);
        if !pa.is_negative() || !pg.is_positive() {
            return None;
        }
        height_sum += pa.abs() * &rd.root(p).height;
        w = rd.weyl_mul(&rd.reflection(p), &w);
    }
    if w.act_cov(&alpha.cov) != gamma.cov || height_sum != gamma.height {
        return None;
    }
    Some(list)
}

/// Decompose a Weyl-orbit relation over a Levi: pairwise-orthogonal positive
/// roots of the Levi whose product of reflections maps `alpha` to `gamma`,
/// pairing positively with `gamma` and negatively with `alpha`, with the
/// height identity.  `alpha` must be positive with anti-dominant character
/// for the Levi; errors when `gamma` is not in the orbit.
pub fn weyl_orbit_conjugators(
    rd: &RootDatum,
    h: &LeviSubset,
    alpha_id: usize,
    gamma_id: usize,
) -> Result<Vec<usize>> {
    let alpha = rd.root(alpha_id);
    if !alpha.positive || !rd.root(gamma_id).positive {
        return Err(Error::Precondition("conjugator endpoints must be positive roots".into()));
    }
    if h.indices().iter().any(|&i| rd.pairing(&alpha.ch, &rd.simple_cov[i]).is_positive()) {
        return Err(Error::Precondition(
            "base root character must be anti-dominant for the Levi".into(),
        ));
    }
    if gamma_id == alpha_id {
        return Ok(vec![]);
    }
    conjugators_try(rd, h, alpha_id, gamma_id, false)
        .or_else(|| conjugators_try(rd, h, alpha_id, gamma_id, true))
        .ok_or_else(|| {
            Error::Precondition("target root is not in the Levi Weyl-orbit of the base".into())
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::presets;
    use crate::ivec;

    fn p(name: &str, params: &[(&str, i64)]) -> RootDatum {
        presets::preset(name, &params.iter().map(|(k, v)| (k.to_string(), *v)).collect()).unwrap()
    }

    fn ls(idx: &[usize]) -> LeviSubset {
        LeviSubset::from_indices(idx)
    }

    fn simple_id(rd: &RootDatum, i: usize) -> usize {
        rd.simple_root_id(i)
    }

    fn root_by_ch(rd: &RootDatum, ch: &[i64]) -> usize {
        rd.root_id_by_ch(&ivec(ch)).unwrap()
    }

    #[test]
    fn minuscule_lift_examples() {
        let rd = p("GL", &[("n", 2)]);
        let full = LeviSubset::full(1);
        assert_eq!(minuscule_lift(&rd, &full, &ivec(&[1, 0])).unwrap(), ivec(&[1, 0]));
        assert_eq!(minuscule_lift(&rd, &full, &ivec(&[0, 1])).unwrap(), ivec(&[1, 0]));
        assert_eq!(minuscule_lift(&rd, &full, &ivec(&[2, -1])).unwrap(), ivec(&[1, 0]));

        // torus Levi: every cocharacter is its own lift
        let rd = p("GL", &[("n", 3)]);
        let t = LeviSubset::torus();
        assert_eq!(minuscule_lift(&rd, &t, &ivec(&[5, -2, 7])).unwrap(), ivec(&[5, -2, 7]));

        // block Levi inside GL4: per-block lifts
        let rd = p("GL", &[("n", 4)]);
        let m = ls(&[0, 2]);
        assert_eq!(minuscule_lift(&rd, &m, &ivec(&[1, 0, 1, 0])).unwrap(), ivec(&[1, 0, 1, 0]));
        assert_eq!(minuscule_lift(&rd, &m, &ivec(&[0, 1, 0, 1])).unwrap(), ivec(&[1, 0, 1, 0]));
        assert_eq!(minuscule_lift(&rd, &m, &ivec(&[2, -1, 1, 0])).unwrap(), ivec(&[1, 0, 1, 0]));
    }

    #[test]
    fn minuscule_lift_unique_in_small_box() {
        // bounded search around the lift: no other M-dominant M-minuscule
        // vector in the same class within two coroot steps
        let rd = p("GL", &[("n", 4)]);
        let m = ls(&[0, 2]);
        let lift = minuscule_lift(&rd, &m, &ivec(&[1, 0, 1, 0])).unwrap();
        let covs: Vec<Vec<Int>> = m.indices().iter().map(|&i| rd.simple_cov[i].clone()).collect();
        for c0 in -2i64..=2 {
            for c1 in -2i64..=2 {
                let mut v = lift.clone();
                for (coef, cov) in [(c0, &covs[0]), (c1, &covs[1])] {
                    for (x, y) in v.iter_mut().zip(cov) {
                        *x += Int::from(coef) * y;
                    }
                }
                if rd.is_dominant(&v, &m) && rd.is_minuscule(&v, &m) {
                    assert_eq!(v, lift);
                }
            }
        }
    }

    #[test]
    fn w_x_examples() {
        let rd = p("GL", &[("n", 2)]);
        let full = LeviSubset::full(1);
        let w = w_x_compute(&rd, &full, &ivec(&[1, 0])).unwrap();
        assert_eq!(w, rd.weyl_simple(0));
        let w = w_x_compute(&rd, &full, &ivec(&[1, 1])).unwrap();
        assert!(w.is_identity());

        let rd = p("GL", &[("n", 4)]);
        let m = ls(&[0, 2]);
        let w = w_x_compute(&rd, &m, &ivec(&[1, 0, 1, 0])).unwrap();
        assert_eq!(w, rd.weyl_mul(&rd.weyl_simple(0), &rd.weyl_simple(2)));
    }

    #[test]
    fn iset_split_singleton() {
        let rd = p("GL", &[("n", 4)]);
        let m = ls(&[0, 2]);
        let b = crate::isocrystal::superbasic_standard_form(&rd, &m, &[1, 1]).unwrap();
        let iset = iset_enumerate(&rd, &ivec(&[1, 1, 0, 0]), &b, &m).unwrap();
        assert_eq!(iset.elements.len(), 1);
        assert_eq!(iset.elements[0].mu_x, ivec(&[1, 0, 1, 0]));
    }

    #[test]
    fn iset_res_gl_two_elements() {
        let rd = p("ResGL", &[("n", 2), ("d", 2)]);
        let t = LeviSubset::torus();
        let b = BRep::translation(&rd, ivec(&[1, 0, 0, 1])).unwrap();
        let iset = iset_enumerate(&rd, &ivec(&[1, 0, 1, 0]), &b, &t).unwrap();
        let lifts: Vec<Vec<Int>> = iset.elements.iter().map(|e| e.mu_x.clone()).collect();
        assert_eq!(lifts, vec![ivec(&[0, 1, 1, 0]), ivec(&[1, 0, 0, 1])]);
    }

    /// Unitary example data: M spanned by the outer simple roots, base lift
    /// (1,1,0,1,0;1), b built from the lift and its distinguished Weyl part.
    fn gu5_example() -> (RootDatum, LeviSubset, Vec<Int>, BRep) {
        let rd = p("GU", &[("n", 5)]);
        let m = ls(&[0, 3]);
        let mu_x0 = ivec(&[1, 1, 0, 1, 0, 1]);
        let w = w_x_compute(&rd, &m, &mu_x0).unwrap();
        let b = BRep::new(&rd, mu_x0.clone(), w, Some(m.clone())).unwrap();
        (rd, m, mu_x0, b)
    }

    #[test]
    fn iset_gu5_singleton() {
        let (rd, m, mu_x0, b) = gu5_example();
        let mu = rd.dominant_rep(&mu_x0, &LeviSubset::full(rd.n_simple())).0;
        assert_eq!(mu, ivec(&[1, 1, 1, 0, 0, 1]));
        let iset = iset_enumerate(&rd, &mu, &b, &m).unwrap();
        assert_eq!(iset.elements.len(), 1);
        assert_eq!(iset.elements[0].mu_x, mu_x0);

        // same statement inside the closure of the middle orbit
        let omega = omega_classify(&rd, &m, simple_id(&rd, 1)).unwrap();
        let scoped = iset_enumerate_in(&rd, &omega.basis, &mu_x0, &b, &m).unwrap();
        assert_eq!(scoped.elements.len(), 1);
        assert_eq!(scoped.elements[0].mu_x, mu_x0);
    }

    #[test]
    fn adapted_examples() {
        // unitary case: middle simple root is adapted for the outer Levi
        let (rd, m, _, _) = gu5_example();
        assert!(is_adapted(&rd, &m, simple_id(&rd, 2)).unwrap());
        assert!(is_adapted(&rd, &m, simple_id(&rd, 1)).unwrap());

        // torus Levi: everything is adapted
        let rd = p("GL", &[("n", 3)]);
        let t = LeviSubset::torus();
        for id in rd.phi_n_ids(&t) {
            assert!(is_adapted(&rd, &t, id).unwrap());
        }

        // symplectic case: short root pairs to -2 with the long Levi root
        let rd = p("GSp", &[("n", 4)]);
        let m = ls(&[1]);
        let short = simple_id(&rd, 0); // e0 - e1
        let pairing = rd.pairing(&rd.simple_ch[1], &rd.root(short).cov);
        assert_eq!(pairing, int(-2));
        assert!(!is_adapted(&rd, &m, short).unwrap());
        let fixed = adapted_modify(&rd, &m, short).unwrap();
        assert_eq!(fixed, root_by_ch(&rd, &[2, 0, -1]));
        assert!(is_adapted(&rd, &m, fixed).unwrap());
        // corrected coroot differs from the original by a Levi coroot
        let pi1m = Pi1Group::new(&rd, &m);
        assert_eq!(pi1m.project(&rd.root(short).cov), pi1m.project(&rd.root(fixed).cov));
    }

    #[test]
    fn omega_types() {
        // split singleton orbit
        let rd = p("GL", &[("n", 3)]);
        let t = LeviSubset::torus();
        let om = omega_classify(&rd, &t, simple_id(&rd, 0)).unwrap();
        assert_eq!(om.omega_type, OmegaType::I);
        assert_eq!(om.alpha_tilde, Some(simple_id(&rd, 0)));

        // unitary middle orbit: one component, two members
        let (rd, m, _, _) = gu5_example();
        let om = omega_classify(&rd, &m, simple_id(&rd, 1)).unwrap();
        assert_eq!(om.orbit.len(), 2);
        assert_eq!(om.omega_type, OmegaType::II);
        assert_eq!(om.period, 1);
        assert!(om.adapted);
        // members are adjacent middle roots: no separate neighbor, composite
        // is their sum
        assert_eq!(om.beta, None);
        assert_eq!(om.alpha_tilde, Some(root_by_ch(&rd, &[0, 1, 0, -1, 0, 0])));
        // closure is the whole unitary root system
        assert_eq!(om.basis.len(), 4);

        // triality preset: outer orbit over the central Levi is type III
        let rd = p("D4-triality", &[]);
        let m = ls(&[1]);
        let om = omega_classify(&rd, &m, simple_id(&rd, 0)).unwrap();
        assert_eq!(om.orbit.len(), 3);
        assert_eq!(om.omega_type, OmegaType::III);
        assert_eq!(om.beta, Some(simple_id(&rd, 1)));
        let tilde = om.alpha_tilde.unwrap();
        // composite = sum of the three outer roots and the center
        let mut ch = vadd(&rd.root(simple_id(&rd, 0)).ch, &rd.root(simple_id(&rd, 2)).ch);
        ch = vadd(&ch, &rd.root(simple_id(&rd, 3)).ch);
        ch = vadd(&ch, &rd.root(simple_id(&rd, 1)).ch);
        assert_eq!(rd.root(tilde).ch, ch);

        // over the torus the same orbit splits into three components
        let om = omega_classify(&rd, &LeviSubset::torus(), simple_id(&rd, 0)).unwrap();
        assert_eq!(om.omega_type, OmegaType::I);

        // symplectic closure swallows the whole system
        let rd = p("GSp", &[("n", 4)]);
        let m = ls(&[0]);
        let om = omega_classify(&rd, &m, root_by_ch(&rd, &[1, 1, -1])).unwrap();
        assert_eq!(om.omega_type, OmegaType::I);
        assert_eq!(om.closure.len(), rd.n_roots());
        let mut expected = vec![simple_id(&rd, 0), simple_id(&rd, 1)];
        expected.sort_unstable();
        assert_eq!(om.basis, expected);
    }

    #[test]
    fn chain_trivial_and_single_move() {
        // trivial chain
        let (rd, m, mu_x0, b) = gu5_example();
        let mu = rd.dominant_rep(&mu_x0, &LeviSubset::full(rd.n_simple())).0;
        let iset = iset_enumerate(&rd, &mu, &b, &m).unwrap();
        let x = iset.elements[0].x.clone();
        let chain = convexity_chain(&rd, &iset, &x, &x).unwrap();
        assert!(chain.steps.is_empty());
        chain_verify(&rd, &iset, &chain).unwrap();

        // one move between the two classes of the restriction-of-scalars case
        let rd = p("ResGL", &[("n", 2), ("d", 2)]);
        let t = LeviSubset::torus();
        let b = BRep::translation(&rd, ivec(&[1, 0, 0, 1])).unwrap();
        let iset = iset_enumerate(&rd, &ivec(&[1, 0, 1, 0]), &b, &t).unwrap();
        let x0 = iset.elements[0].x.clone();
        let x1 = iset.elements[1].x.clone();
        let chain = convexity_chain(&rd, &iset, &x0, &x1).unwrap();
        assert_eq!(chain.steps.len(), 1);
        let step = &chain.steps[0];
        // the two certificate roots are swapped by sigma
        assert_eq!(rd.sigma_on_root(step.alpha), step.alpha_prime);
        assert!(step.immediate);
        chain_verify(&rd, &iset, &chain).unwrap();

        // refinement of a shift-one chain is the identity
        let refined = refine_immediate(&rd, &iset, &chain).unwrap();
        assert_eq!(refined.steps.len(), 1);
        assert_eq!(refined.steps[0].from, step.from);
        assert_eq!(refined.steps[0].to, step.to);
        chain_verify(&rd, &iset, &refined).unwrap();
    }

    /// Four cyclically permuted blocks of GL2 over the torus Levi: the
    /// indexing set has six classes (choices of two raised blocks).
    fn res24_iset() -> (RootDatum, ISet) {
        let rd = p("ResGL", &[("n", 2), ("d", 4)]);
        let t = LeviSubset::torus();
        let b = BRep::translation(&rd, ivec(&[1, 0, 1, 0, 0, 1, 0, 1])).unwrap();
        let iset = iset_enumerate(&rd, &ivec(&[1, 0, 1, 0, 1, 0, 1, 0]), &b, &t).unwrap();
        (rd, iset)
    }

    #[test]
    fn immediate_and_refinement() {
        let (rd, iset) = res24_iset();
        assert_eq!(iset.elements.len(), 6);
        let alpha0 = simple_id(&rd, 0);
        let pi1m = Pi1Group::new(&rd, &iset.levi);
        // start: blocks 1 and 2 raised; move by (alpha - sigma^2 alpha)
        let x1 = pi1m.project(&ivec(&[0, 1, 1, 0, 1, 0, 0, 1]));
        let x2 = move_coords(&pi1m, &rd, &x1, alpha0, rd.sigma_orbit_of_root(alpha0)[2]);
        assert!(iset.find(&x1).is_some());
        assert!(iset.find(&x2).is_some());
        // shift two is blocked by the interior class at shift one
        assert!(!is_immediate(&rd, &iset, &x1, &x2, alpha0, 2).unwrap());
        let y = move_coords(&pi1m, &rd, &x1, alpha0, rd.sigma_orbit_of_root(alpha0)[1]);
        assert!(iset.find(&y).is_some());
        assert!(is_immediate(&rd, &iset, &x1, &y, alpha0, 1).unwrap());

        // refinement splits the long step into two immediate ones
        let chain = ChainWitness {
            start: x1.clone(),
            end: x2.clone(),
            steps: vec![ChainStep {
                from: x1.clone(),
                to: x2.clone(),
                alpha: alpha0,
                alpha_prime: rd.sigma_orbit_of_root(alpha0)[2],
                orbit_id: *rd.sigma_orbit_of_root(alpha0).iter().min().unwrap(),
                immediate: false,
            }],
        };
        chain_verify(&rd, &iset, &chain).unwrap();
        let refined = refine_immediate(&rd, &iset, &chain).unwrap();
        assert_eq!(refined.steps.len(), 2);
        assert!(refined.steps.iter().all(|s| s.immediate));
        chain_verify(&rd, &iset, &refined).unwrap();
    }

    #[test]
    fn chain_connects_all_pairs() {
        let (rd, iset) = res24_iset();
        for a in &iset.elements {
            for b in &iset.elements {
                let chain = convexity_chain(&rd, &iset, &a.x, &b.x).unwrap();
                chain_verify(&rd, &iset, &chain).unwrap();
                let refined = refine_immediate(&rd, &iset, &chain).unwrap();
                assert!(refined.steps.iter().all(|s| s.immediate));
                chain_verify(&rd, &iset, &refined).unwrap();
            }
        }
    }

    #[test]
    fn scoped_set_inclusion_and_moves() {
        // classes conjugate inside an orbit closure stay in the full set, and
        // the scoped set is closed under orbit moves that stay in the set
        let (rd, m, mu_x0, b) = gu5_example();
        let mu = rd.dominant_rep(&mu_x0, &LeviSubset::full(rd.n_simple())).0;
        let full_set = iset_enumerate(&rd, &mu, &b, &m).unwrap();
        for e in &full_set.elements {
            let omega = omega_classify(&rd, &m, simple_id(&rd, 1)).unwrap();
            let scoped = iset_enumerate_in(&rd, &omega.basis, &e.mu_x, &b, &m).unwrap();
            for se in &scoped.elements {
                assert!(full_set.find(&se.x).is_some());
            }
        }
    }

    #[test]
    fn generation_examples() {
        // block Levi of GL4: the interior coroot closes the gap
        let rd = p("GL", &[("n", 4)]);
        let m = ls(&[0, 2]);
        let rep = generation_check(&rd, &m, &ivec(&[1, 0, 1, 0])).unwrap();
        assert!(rep.generated);
        assert_eq!(rep.c_roots, vec![root_by_ch(&rd, &[0, 1, -1, 0])]);

        // full Levi: nothing to add, already spans
        let rd = p("GL", &[("n", 3)]);
        let full = LeviSubset::full(2);
        let rep = generation_check(&rd, &full, &ivec(&[1, 0, 0])).unwrap();
        assert!(rep.generated);
        assert!(rep.c_roots.is_empty());

        // torus in GL2: depends on the sign of the pairing
        let rd = p("GL", &[("n", 2)]);
        let t = LeviSubset::torus();
        assert!(!generation_check(&rd, &t, &ivec(&[1, 0])).unwrap().generated);
        assert!(generation_check(&rd, &t, &ivec(&[0, 1])).unwrap().generated);

        // unitary example datum generates
        let (rd, m, mu_x0, _) = gu5_example();
        let rep = generation_check(&rd, &m, &mu_x0).unwrap();
        assert!(rep.generated);
    }

    #[test]
    fn conjugator_examples() {
        // trivial: target equals base
        let rd = p("GL", &[("n", 3)]);
        let h = ls(&[0]);
        let alpha = simple_id(&rd, 1); // e1 - e2
        assert!(weyl_orbit_conjugators(&rd, &h, alpha, alpha).unwrap().is_empty());

        // single reflection case
        let gamma = root_by_ch(&rd, &[1, 0, -1]); // e0 - e2
        let out = weyl_orbit_conjugators(&rd, &h, alpha, gamma).unwrap();
        assert_eq!(out, vec![simple_id(&rd, 0)]);

        // long-root case through the coroot-side construction
        let rd = p("GSp", &[("n", 4)]);
        let h = ls(&[0]);
        let alpha = root_by_ch(&rd, &[0, 2, -1]); // long, anti-dominant for h
        let gamma = root_by_ch(&rd, &[2, 0, -1]);
        let out = weyl_orbit_conjugators(&rd, &h, alpha, gamma).unwrap();
        assert_eq!(out, vec![simple_id(&rd, 0)]);
        // height identity: 3 = 1 + 2 * 1
        assert_eq!(rd.root(gamma).height, int(3));

        // not in the orbit: different block entirely
        let rd = p("GL", &[("n", 4)]);
        let h = ls(&[0]);
        let alpha = simple_id(&rd, 2); // e2 - e3, orthogonal to h
        let gamma = root_by_ch(&rd, &[1, 0, 0, -1]);
        assert!(weyl_orbit_conjugators(&rd, &h, alpha, gamma).is_err());
    }

    #[test]
    fn lift_arithmetic_identities() {
        // on every enumerated class: adding an adapted coroot then taking the
        // dominant representative equals the lift of the shifted class, and
        // subtracting the distinguished Weyl image is already the lift
        let (rd, m, mu_x0, b) = gu5_example();
        let mu = rd.dominant_rep(&mu_x0, &LeviSubset::full(rd.n_simple())).0;
        let iset = iset_enumerate(&rd, &mu, &b, &m).unwrap();
        let adapted_n: Vec<usize> = rd
            .phi_n_ids(&m)
            .into_iter()
            .filter(|&id| is_adapted(&rd, &m, id).unwrap())
            .collect();
        assert!(!adapted_n.is_empty());
        for e in &iset.elements {
            let wx = w_x_compute(&rd, &m, &e.mu_x).unwrap();
            for &gid in &adapted_n {
                let g = &rd.root(gid).cov;
                let plus = vadd(&e.mu_x, g);
                assert_eq!(
                    rd.dominant_rep(&plus, &m).0,
                    minuscule_lift(&rd, &m, &plus).unwrap()
                );
                let minus = vsub(&e.mu_x, &wx.act_cov(g));
                assert_eq!(minus, minuscule_lift(&rd, &m, &vsub(&e.mu_x, g)).unwrap());
            }
        }
    }

    #[test]
    fn distinguished_weyl_image_is_minimal_maximizer() {
        // over the whole Levi Weyl group, the distinguished image of an
        // adapted root maximizes the pairing with the lift, and among the
        // maximizers it is the unique one minimal in the Levi dominance order
        let (rd, m, mu_x0, _) = gu5_example();
        let wx = w_x_compute(&rd, &m, &mu_x0).unwrap();
        let wm = rd.weyl_group(&m);
        for id in rd.phi_n_ids(&m) {
            if !is_adapted(&rd, &m, id).unwrap() {
                continue;
            }
            let a = rd.root(id);
            let target = rd.pairing(&wx.act_ch(&a.ch), &mu_x0);
            let mut maximizers: Vec<Vec<Int>> = Vec::new();
            for w in wm.iter() {
                let img = w.act_ch(&a.ch);
                let val = rd.pairing(&img, &mu_x0);
                assert!(val <= target);
                if val == target && !maximizers.contains(&img) {
                    maximizers.push(img.clone());
                }
            }
            let wxa = wx.act_ch(&a.ch);
            for img in &maximizers {
                if *img == wxa {
                    continue;
                }
                // wxa is strictly below img: img - wxa is a nonnegative
                // combination of Levi simple roots
                let diff = vsub(img, &wxa);
                let coeffs = expansion_in_levi_simples(&rd, &m, &diff)
                    .expect("maximizers differ by Levi roots");
                assert!(coeffs.iter().all(|c| !c.is_negative()));
                assert!(coeffs.iter().any(|c| c.is_positive()));
            }
        }
    }

    fn expansion_in_levi_simples(
        rd: &RootDatum,
        m: &LeviSubset,
        v: &[Int],
    ) -> Option<Vec<Int>> {
        let cols: Vec<Vec<Int>> =
            m.indices().iter().map(|&i| rd.simple_ch[i].clone()).collect();
        if cols.is_empty() {
            return if v.iter().all(|x| x.is_zero()) { Some(vec![]) } else { None };
        }
        crate::linalg::solve_int(&crate::linalg::IMat::from_cols(cols), v)
    }

    #[test]
    fn adjacent_pair_dominantizations() {
        // for every adjacent pair in the move graph the five shifted vectors
        // dominantize back to the target
        let (rd, iset) = res24_iset();
        let full = LeviSubset::full(rd.n_simple());
        let pi1m = Pi1Group::new(&rd, &iset.levi);
        let mu = iset.mu_dom.clone();
        let orbits = rd.sigma_orbits_on(&rd.phi_n_ids(&iset.levi)).unwrap();
        let mut pairs = 0;
        for e in &iset.elements {
            for f in &iset.elements {
                for orbit in &orbits {
                    for &a in orbit {
                        for &b in orbit {
                            if a == b || !is_adapted(&rd, &iset.levi, a).unwrap() {
                                continue;
                            }
                            if move_coords(&pi1m, &rd, &e.x, a, b) != f.x {
                                continue;
                            }
                            pairs += 1;
                            let acov = &rd.root(a).cov;
                            let bcov = &rd.root(b).cov;
                            let wx = w_x_compute(&rd, &iset.levi, &e.mu_x).unwrap();
                            let lift_plus =
                                minuscule_lift(&rd, &iset.levi, &vadd(&e.mu_x, acov)).unwrap();
                            let lift_minus =
                                minuscule_lift(&rd, &iset.levi, &vsub(&e.mu_x, bcov)).unwrap();
                            for v in [
                                lift_plus,
                                lift_minus,
                                vadd(&e.mu_x, acov),
                                vsub(&e.mu_x, &wx.act_cov(bcov)),
                                vsub(&vadd(&e.mu_x, acov), &wx.act_cov(bcov)),
                            ] {
                                assert_eq!(rd.dominant_rep(&v, &full).0, mu);
                            }
                        }
                    }
                }
            }
        }
        assert!(pairs > 0);
    }

    #[test]
    fn iset_serializes() {
        let (rd, iset) = res24_iset();
        let js = serde_json::to_string(&iset).unwrap();
        assert!(js.contains("\"elements\""));
        let x0 = iset.elements[0].x.clone();
        let x1 = iset.elements[1].x.clone();
        let chain = convexity_chain(&rd, &iset, &x0, &x1).unwrap();
        let js = serde_json::to_string(&chain).unwrap();
        assert!(js.contains("\"alpha\"") && js.contains("\"immediate\""));
    }
}
