//! Brute-force lattice-model oracle for affine Deligne-Lusztig sets of GL_n
//! over a function field.
//!
//! The model: O = F_{q^m}[[t]] truncated, lattices in the standard n-space
//! enumerated inside the window t^N O^n <= L <= t^{-N} O^n, the translation
//! b = t^lambda w acting through the coefficientwise q-power Frobenius. A
//! lattice is a point when its relative position against b sigma(L) equals mu
//! (or is dominated by mu when the closure variant is selected). Everything
//! is exact; enumeration and matching never consult the root-datum pipeline,
//! so oracle verdicts and the Newton/Kottwitz membership test stay two
//! independent routes that can be compared.

pub mod gf;
pub mod lattice;

pub use gf::{FiniteField, Ser, SeriesRing};
pub use lattice::{
    apply_b_sigma, delta_invariant, lattice_from_cols, matrix_image, relative_position,
    s_power_lattice, span_contains, standard_lattice, BMat, DeltaReport, LatticePoint,
};

use crate::error::{Error, Result};
use crate::hnstrat::{self, BGMuCertificate};
use crate::isocrystal::BRep;
use crate::rootdata::{LeviSubset, RootDatum};
use crate::Int;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Default total enumeration budget across all windows of a job.
pub fn default_max_lattices() -> u64 {
    500_000
}

/// Enumeration job: group size, base field, widening limits, the bound mu
/// and the translation b = t^lambda w (one-line permutation).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct OracleConfig {
    pub n: usize,
    pub q: u64,
    /// Largest extension degree m in the widening schedule.
    pub m_max: usize,
    /// Window depth N: lattices with t^N O^n <= L <= t^{-N} O^n.
    pub depth: usize,
    pub mu: Vec<i64>,
    pub lambda: Vec<i64>,
    pub w: Vec<usize>,
    /// Match rel_pos <= mu (closure) instead of rel_pos == mu.
    #[serde(default)]
    pub closure: bool,
    /// Total enumeration budget across all windows.
    #[serde(default = "default_max_lattices")]
    pub max_lattices: u64,
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > 5 {
            return Err(Error::InvalidInput("oracle rank must be in 1..=5".into()));
        }
        if self.depth > 4 {
            return Err(Error::InvalidInput("window depth must be at most 4".into()));
        }
        if self.m_max == 0 || self.m_max > 4 {
            return Err(Error::InvalidInput("extension bound must be in 1..=4".into()));
        }
        if self.mu.len() != self.n {
            return Err(Error::InvalidInput("mu length differs from the rank".into()));
        }
        if !self.mu.windows(2).all(|p| p[0] >= p[1]) {
            return Err(Error::Precondition("mu must be weakly decreasing".into()));
        }
        self.b()?;
        FiniteField::new(self.q, 1)?;
        Ok(())
    }

    pub fn b(&self) -> Result<BMat> {
        let b = BMat::new(self.lambda.clone(), self.w.clone())?;
        if b.lambda.len() != self.n {
            return Err(Error::InvalidInput("lambda length differs from the rank".into()));
        }
        Ok(b)
    }

    /// Storage ring for window lattices at extension degree m: deep enough
    /// for every canonical basis in the window and its b sigma image.
    pub fn ring(&self, m: usize) -> Result<SeriesRing> {
        let spread = (self.lambda.iter().max().copied().unwrap_or(0)
            - self.lambda.iter().min().copied().unwrap_or(0))
        .unsigned_abs() as usize;
        SeriesRing::new(self.q, m, 2 * self.depth + spread + 4)
    }
}

/// Express a one-line permutation as a word in adjacent transpositions.
pub fn perm_to_word(p: &[usize]) -> Vec<usize> {
    let mut q: Vec<usize> = p.to_vec();
    let mut word = Vec::new();
    loop {
        let mut done = true;
        for i in 0..q.len().saturating_sub(1) {
            if q[i] > q[i + 1] {
                q.swap(i, i + 1);
                word.push(i);
                done = false;
            }
        }
        if done {
            break;
        }
    }
    word.reverse();
    word
}

/// The GL_n root datum together with the representative matching the
/// oracle's translation data, verified coordinatewise.
pub fn group_rep(cfg: &OracleConfig) -> Result<(RootDatum, BRep)> {
    let mut params = BTreeMap::new();
    params.insert("n".to_string(), cfg.n as i64);
    let rd = crate::rootdata::presets::preset("GL", &params)?;
    let word = perm_to_word(&cfg.w);
    let mut we = rd.weyl_from_word(&word)?;
    let matches = |we: &crate::rootdata::WeylElement| {
        (0..cfg.n).all(|j| {
            let mut e = vec![Int::from(0); cfg.n];
            e[j] = Int::from(1);
            let img = we.act_cov(&e);
            (0..cfg.n).all(|i| img[i] == Int::from(i64::from(i == cfg.w[j])))
        })
    };
    if !matches(&we) {
        let mut rev = word.clone();
        rev.reverse();
        we = rd.weyl_from_word(&rev)?;
        if !matches(&we) {
            return Err(Error::Internal("permutation word does not reproduce the one-line form".into()));
        }
    }
    let lambda: Vec<Int> = cfg.lambda.iter().map(|&x| Int::from(x)).collect();
    let b = BRep::new(&rd, lambda, we, None)?;
    Ok((rd, b))
}

/// Newton/Kottwitz membership prediction for the configured pair, computed
/// on the split GL_n root datum.
pub fn predict_membership(cfg: &OracleConfig) -> Result<BGMuCertificate> {
    cfg.validate()?;
    let (rd, b) = group_rep(cfg)?;
    let mu: Vec<Int> = cfg.mu.iter().map(|&x| Int::from(x)).collect();
    hnstrat::in_b_g_mu(&rd, &b, &mu, &LeviSubset::full(rd.n_simple()))
}

/// nu <= mu in the dominance order on weakly decreasing integer vectors.
pub fn leq_dominance(nu: &[i64], mu: &[i64]) -> bool {
    if nu.len() != mu.len() {
        return false;
    }
    let (mut sn, mut sm) = (0i64, 0i64);
    for (a, b) in nu.iter().zip(mu) {
        sn += a;
        sm += b;
        if sn > sm {
            return false;
        }
    }
    sn == sm
}

/// One enumerated lattice that satisfied the position condition.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PointRecord {
    /// Extension degree of the smallest field containing every coefficient.
    pub field_degree: usize,
    pub shift: i64,
    pub pivots: Vec<usize>,
    /// Canonical basis, column-major; each entry is its coefficient list
    /// (low t-degree first, trailing zeros trimmed), encoded in F_{q^m}.
    pub hermite: Vec<Vec<Vec<u64>>>,
    pub w_g: i64,
    pub rel_pos: Vec<i64>,
}

fn record_of(m: usize, lat: &LatticePoint, rel: Vec<i64>) -> PointRecord {
    let hermite = lat
        .cols
        .iter()
        .map(|col| {
            col.iter()
                .map(|e| {
                    let mut v: Vec<u64> = e.iter().map(|&c| c as u64).collect();
                    while v.last() == Some(&0) {
                        v.pop();
                    }
                    v
                })
                .collect()
        })
        .collect();
    PointRecord {
        field_degree: m,
        shift: lat.shift,
        pivots: lat.pivots.clone(),
        hermite,
        w_g: lat.w_g(),
        rel_pos: rel,
    }
}

/// Smallest d (dividing the ring's extension degree) with every coefficient
/// fixed by the d-th power of the q-Frobenius.
fn min_field_degree(ring: &SeriesRing, lat: &LatticePoint) -> usize {
    let m = ring.field.m;
    'outer: for d in 1..m {
        if m % d != 0 {
            continue;
        }
        for col in &lat.cols {
            for e in col {
                for &c in e {
                    let mut x = c;
                    for _ in 0..d {
                        x = ring.field.frob(x);
                    }
                    if x != c {
                        continue 'outer;
                    }
                }
            }
        }
        return d;
    }
    m
}

/// Number of window lattices: the canonical bases have pivots t^{a_i} with
/// 0 <= a_i <= 2N and a_i free coefficients in each of the i entries below
/// the diagonal in row i, so the count is prod_i sum_a S^{i*a}.
pub fn window_size(n: usize, depth: usize, field_size: u64) -> u128 {
    let cap = u128::MAX >> 1;
    let mut total: u128 = 1;
    for i in 0..n {
        let mut row: u128 = 0;
        for a in 0..=2 * depth {
            let mut p: u128 = 1;
            for _ in 0..i * a {
                p = p.saturating_mul(field_size as u128);
                if p >= cap {
                    break;
                }
            }
            row = row.saturating_add(p);
        }
        total = total.saturating_mul(row);
        if total >= cap {
            return cap;
        }
    }
    total
}

fn pivot_vectors(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    loop {
        out.push(cur.clone());
        let mut k = n;
        while k > 0 {
            k -= 1;
            if cur[k] < max {
                cur[k] += 1;
                for c in cur.iter_mut().skip(k + 1) {
                    *c = 0;
                }
                break;
            }
            if k == 0 {
                return out;
            }
        }
    }
}

fn block_size(field_size: u64, piv: &[usize]) -> u128 {
    let mut total: u128 = 1;
    for (i, &a) in piv.iter().enumerate() {
        for _ in 0..i * a {
            total = total.saturating_mul(field_size as u128);
            if total >= u128::MAX >> 1 {
                return u128::MAX >> 1;
            }
        }
    }
    total
}

/// Decode the idx-th lattice of a pivot block: coefficients are base-S
/// digits, slots ordered by (column, row, degree).
fn block_lattice(ring: &SeriesRing, depth: usize, piv: &[usize], mut idx: u64) -> LatticePoint {
    let n = piv.len();
    let s = ring.field.size as u64;
    let mut cols = vec![vec![ring.zero(); n]; n];
    for j in 0..n {
        cols[j][j] = ring.t_pow(piv[j]);
        for i in j + 1..n {
            let mut e = ring.zero();
            for k in e.iter_mut().take(piv[i]) {
                *k = (idx % s) as u16;
                idx /= s;
            }
            cols[j][i] = e;
        }
    }
    // normalize the shift: divide out the largest common power of t
    let min_val = cols
        .iter()
        .flatten()
        .filter_map(|e| ring.val(e))
        .min()
        .unwrap_or(0);
    let shift = -(depth as i64) + min_val as i64;
    if min_val > 0 {
        for col in cols.iter_mut() {
            for e in col.iter_mut() {
                *e = ring.shift_t(e, -(min_val as i64));
            }
        }
    }
    let pivots = piv.iter().map(|&a| a - min_val).collect();
    LatticePoint { shift, pivots, cols }
}

const CHUNK: u64 = 4096;

struct Chunk {
    piv: usize,
    start: u64,
    end: u64,
}

fn chunks_of(field_size: u64, pivs: &[Vec<usize>]) -> Vec<Chunk> {
    let mut out = Vec::new();
    for (pi, piv) in pivs.iter().enumerate() {
        let size = block_size(field_size, piv) as u64;
        let mut start = 0;
        while start < size {
            let end = (start + CHUNK).min(size);
            out.push(Chunk { piv: pi, start, end });
            start = end;
        }
    }
    out
}

/// Test one lattice against the position condition; Ok(Some(rel)) on match.
/// Works on a raw basis of the twisted image: the action is monomial, so
/// canonicalizing it per lattice would only slow the scan down. The divisor
/// sum inside relative_position re-checks determinant-valuation additivity.
fn match_lattice(
    ring: &SeriesRing,
    cfg: &OracleConfig,
    b: &BMat,
    lat: &LatticePoint,
) -> Result<Option<Vec<i64>>> {
    let (cols, shift, wg) = lattice::twisted_image_cols(ring, b, lat)?;
    let rel = lattice::relative_position_cols(ring, lat, &cols, shift, wg)?;
    let hit = if cfg.closure { leq_dominance(&rel, &cfg.mu) } else { rel == cfg.mu };
    Ok(if hit { Some(rel) } else { None })
}

/// All points of one window (fixed extension degree m, depth nw), in
/// deterministic enumeration order. `dedup_subfields` drops lattices whose
/// coefficients live in a proper subfield (they already appear in the run
/// for that smaller degree).
fn window_points(
    cfg: &OracleConfig,
    m: usize,
    nw: usize,
    dedup_subfields: bool,
) -> Result<Vec<PointRecord>> {
    let ring = cfg.ring(m)?;
    let b = cfg.b()?;
    let pivs = pivot_vectors(cfg.n, 2 * nw);
    let chunks = chunks_of(ring.field.size as u64, &pivs);
    let results: Result<Vec<Vec<PointRecord>>> = chunks
        .par_iter()
        .map(|ch| {
            let mut found = Vec::new();
            for idx in ch.start..ch.end {
                let lat = block_lattice(&ring, nw, &pivs[ch.piv], idx);
                if dedup_subfields && min_field_degree(&ring, &lat) != m {
                    continue;
                }
                if let Some(rel) = match_lattice(&ring, cfg, &b, &lat)? {
                    found.push(record_of(m, &lat, rel));
                }
            }
            Ok(found)
        })
        .collect();
    Ok(results?.into_iter().flatten().collect())
}

/// First point of one window in enumeration order, if any.
fn window_first(cfg: &OracleConfig, m: usize, nw: usize) -> Result<Option<PointRecord>> {
    let ring = cfg.ring(m)?;
    let b = cfg.b()?;
    let pivs = pivot_vectors(cfg.n, 2 * nw);
    let chunks = chunks_of(ring.field.size as u64, &pivs);
    let hit = chunks
        .par_iter()
        .find_map_first(|ch| {
            for idx in ch.start..ch.end {
                let lat = block_lattice(&ring, nw, &pivs[ch.piv], idx);
                match match_lattice(&ring, cfg, &b, &lat) {
                    Ok(Some(rel)) => return Some(Ok(record_of(m, &lat, rel))),
                    Ok(None) => {}
                    Err(e) => return Some(Err(e)),
                }
            }
            None
        })
        .transpose()?;
    Ok(hit)
}

/// Full point set of the configured window, all extension degrees up to
/// m_max, each lattice listed once at its minimal field of definition.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PointSet {
    pub points: Vec<PointRecord>,
    pub lattices_scanned: u64,
}

pub fn adlv_points(cfg: &OracleConfig) -> Result<PointSet> {
    cfg.validate()?;
    let mut total: u128 = 0;
    for m in 1..=cfg.m_max {
        let size = window_size(cfg.n, cfg.depth, FiniteField::new(cfg.q, m)?.size as u64);
        total = total.saturating_add(size);
    }
    if total > cfg.max_lattices as u128 {
        return Err(Error::ResourceExhausted(format!(
            "window holds {total} lattices, over the cap {}",
            cfg.max_lattices
        )));
    }
    let mut points = Vec::new();
    for m in 1..=cfg.m_max {
        points.extend(window_points(cfg, m, cfg.depth, true)?);
    }
    Ok(PointSet { points, lattices_scanned: total as u64 })
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum OracleVerdict {
    /// A witness lattice was found.
    Nonempty,
    /// Ruled out without enumeration: the relative-position sum of any
    /// lattice pair equals the determinant valuation of b, which differs
    /// from |mu|.
    ProvenEmpty,
    /// No witness in the searched windows; an honest negative only when the
    /// membership prediction is also negative.
    NoPointFound,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct WindowReport {
    pub field_degree: usize,
    pub depth: usize,
    pub size: u64,
    pub searched: bool,
}

/// Outcome of the widening search plus the independent membership
/// prediction. `consistent` is None exactly in the inconclusive case:
/// membership predicted but no witness inside the configured windows.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct OracleReport {
    pub verdict: OracleVerdict,
    pub predicted_nonempty: bool,
    pub consistent: Option<bool>,
    pub witness: Option<PointRecord>,
    pub windows: Vec<WindowReport>,
    pub reason: Option<String>,
    pub complete: bool,
}

/// Widening search over (extension degree, depth) windows ordered by size,
/// compared against the Newton/Kottwitz membership prediction.
pub fn nonempty_oracle(cfg: &OracleConfig) -> Result<OracleReport> {
    cfg.validate()?;
    let cert = predict_membership(cfg)?;
    let predicted = cert.member;
    let sum_l: i64 = cfg.lambda.iter().sum();
    let sum_mu: i64 = cfg.mu.iter().sum();
    if sum_l != sum_mu {
        return Ok(OracleReport {
            verdict: OracleVerdict::ProvenEmpty,
            predicted_nonempty: predicted,
            consistent: Some(!predicted),
            witness: None,
            windows: Vec::new(),
            reason: Some(format!(
                "determinant valuation of b is {sum_l} but |mu| = {sum_mu}: no lattice can match"
            )),
            complete: true,
        });
    }
    let mut schedule = Vec::new();
    for m in 1..=cfg.m_max {
        let s = FiniteField::new(cfg.q, m)?.size as u64;
        for nw in 0..=cfg.depth {
            schedule.push((window_size(cfg.n, nw, s), m, nw));
        }
    }
    schedule.sort();
    let mut budget = cfg.max_lattices;
    let mut windows = Vec::new();
    let mut witness = None;
    let mut complete = true;
    for &(size, m, nw) in &schedule {
        if witness.is_some() {
            break;
        }
        if size > budget as u128 {
            windows.push(WindowReport { field_degree: m, depth: nw, size: size.min(u64::MAX as u128) as u64, searched: false });
            complete = false;
            continue;
        }
        budget -= size as u64;
        windows.push(WindowReport { field_degree: m, depth: nw, size: size as u64, searched: true });
        witness = window_first(cfg, m, nw)?;
    }
    let verdict = if witness.is_some() { OracleVerdict::Nonempty } else { OracleVerdict::NoPointFound };
    let consistent = match verdict {
        OracleVerdict::Nonempty => Some(predicted),
        OracleVerdict::ProvenEmpty => Some(!predicted),
        OracleVerdict::NoPointFound => {
            if predicted {
                None
            } else {
                Some(true)
            }
        }
    };
    Ok(OracleReport {
        verdict,
        predicted_nonempty: predicted,
        consistent,
        witness,
        windows,
        reason: None,
        complete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sb_gl2(mu: Vec<i64>) -> OracleConfig {
        // superbasic shift element of GL_2 over F_2
        OracleConfig {
            n: 2,
            q: 2,
            m_max: 1,
            depth: 1,
            mu,
            lambda: vec![1, 0],
            w: vec![1, 0],
            closure: false,
            max_lattices: default_max_lattices(),
        }
    }

    #[test]
    fn config_validation_rejects_bad_shapes() {
        let mut cfg = sb_gl2(vec![1, 0]);
        cfg.n = 6;
        assert!(matches!(cfg.validate(), Err(Error::InvalidInput(_))));
        let mut cfg = sb_gl2(vec![0, 1]);
        cfg.lambda = vec![0, 1];
        assert!(matches!(cfg.validate(), Err(Error::Precondition(_))));
        let cfg = sb_gl2(vec![1, 0, 0]);
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn perm_words_reproduce_their_permutation() {
        for p in [vec![0, 1, 2], vec![1, 0, 2], vec![2, 0, 1], vec![2, 1, 0], vec![1, 2, 0]] {
            let cfg = OracleConfig {
                n: 3,
                q: 2,
                m_max: 1,
                depth: 1,
                mu: vec![0, 0, 0],
                lambda: vec![0, 0, 0],
                w: p,
                closure: false,
                max_lattices: 1000,
            };
            // group_rep verifies the word against the one-line form internally
            assert!(group_rep(&cfg).is_ok());
        }
    }

    #[test]
    fn window_size_matches_enumeration() {
        let cfg = sb_gl2(vec![1, 0]);
        let ring = cfg.ring(1).unwrap();
        let pivs = pivot_vectors(2, 2);
        let total: u128 = pivs.iter().map(|p| block_size(ring.field.size as u64, p)).sum();
        assert_eq!(total, window_size(2, 1, 2));
        assert_eq!(total, 21);
    }

    #[test]
    fn superbasic_minuscule_points_realize_every_window_class() {
        let set = adlv_points(&sb_gl2(vec![1, 0])).unwrap();
        // the standard lattice is a point: rel_pos(L0, s L0) = (1, 0)
        assert!(set
            .points
            .iter()
            .any(|p| p.shift == 0 && p.pivots == vec![0, 0] && p.w_g == 0));
        // every determinant valuation in [-2, 2] occurs
        let mut wgs: Vec<i64> = set.points.iter().map(|p| p.w_g).collect();
        wgs.sort_unstable();
        wgs.dedup();
        assert_eq!(wgs, vec![-2, -1, 0, 1, 2]);
        // the only points of the zero-dimensional set are the shift powers
        assert_eq!(set.points.len(), 5);
    }

    #[test]
    fn parity_obstruction_is_proven_without_enumeration() {
        let rep = nonempty_oracle(&sb_gl2(vec![2, 0])).unwrap();
        assert_eq!(rep.verdict, OracleVerdict::ProvenEmpty);
        assert_eq!(rep.consistent, Some(true));
        assert!(!rep.predicted_nonempty);
        assert!(rep.reason.is_some());
    }

    #[test]
    fn newton_obstruction_stays_empty_in_searched_windows() {
        let cfg = OracleConfig {
            n: 3,
            q: 2,
            m_max: 1,
            depth: 1,
            mu: vec![1, 0, 0],
            lambda: vec![2, -1, 0],
            w: vec![0, 1, 2],
            closure: false,
            max_lattices: 10_000,
        };
        let rep = nonempty_oracle(&cfg).unwrap();
        assert_eq!(rep.verdict, OracleVerdict::NoPointFound);
        assert!(!rep.predicted_nonempty);
        assert_eq!(rep.consistent, Some(true));
        assert!(rep.complete);
        assert!(rep.windows.iter().all(|w| w.searched));
    }

    #[test]
    fn oracle_and_predicate_agree_on_the_three_reference_cases() {
        let rep1 = nonempty_oracle(&sb_gl2(vec![1, 0])).unwrap();
        assert_eq!(rep1.verdict, OracleVerdict::Nonempty);
        assert_eq!(rep1.consistent, Some(true));
        assert!(rep1.predicted_nonempty);
        let rep2 = nonempty_oracle(&sb_gl2(vec![2, 0])).unwrap();
        assert_eq!(rep2.verdict, OracleVerdict::ProvenEmpty);
        let cfg3 = OracleConfig {
            n: 3,
            q: 2,
            m_max: 1,
            depth: 1,
            mu: vec![1, 0, 0],
            lambda: vec![2, -1, 0],
            w: vec![0, 1, 2],
            closure: false,
            max_lattices: 10_000,
        };
        let rep3 = nonempty_oracle(&cfg3).unwrap();
        assert_eq!(rep3.verdict, OracleVerdict::NoPointFound);
        assert_eq!(
            (rep1.predicted_nonempty, rep2.predicted_nonempty, rep3.predicted_nonempty),
            (true, false, false)
        );
    }

    #[test]
    fn dominant_translation_contains_the_standard_lattice() {
        let cfg = OracleConfig {
            n: 2,
            q: 2,
            m_max: 1,
            depth: 1,
            mu: vec![1, 0],
            lambda: vec![1, 0],
            w: vec![0, 1],
            closure: false,
            max_lattices: 10_000,
        };
        let set = adlv_points(&cfg).unwrap();
        assert!(set.points.iter().any(|p| p.shift == 0 && p.pivots == vec![0, 0]));
    }

    #[test]
    fn closure_variant_widens_the_match() {
        // central translation t^(1,1): every lattice pair has position (1,1),
        // so the strict mu = (2,0) set is empty while its closure is everything
        let cfg = OracleConfig {
            n: 2,
            q: 2,
            m_max: 1,
            depth: 1,
            mu: vec![2, 0],
            lambda: vec![1, 1],
            w: vec![0, 1],
            closure: false,
            max_lattices: 10_000,
        };
        let strict = adlv_points(&cfg).unwrap();
        assert!(strict.points.is_empty());
        let mut closed_cfg = cfg.clone();
        closed_cfg.closure = true;
        let closed = adlv_points(&closed_cfg).unwrap();
        assert_eq!(closed.points.len() as u64, closed.lattices_scanned);
        // strict-mode search is inconclusive: membership predicted, no witness
        let rep = nonempty_oracle(&cfg).unwrap();
        assert_eq!(rep.verdict, OracleVerdict::NoPointFound);
        assert!(rep.predicted_nonempty);
        assert_eq!(rep.consistent, None);
        let rep = nonempty_oracle(&closed_cfg).unwrap();
        assert_eq!(rep.verdict, OracleVerdict::Nonempty);
        assert_eq!(rep.consistent, Some(true));
    }

    #[test]
    fn extension_degrees_partition_the_point_set() {
        let mut cfg = sb_gl2(vec![1, 0]);
        cfg.m_max = 2;
        cfg.max_lattices = 100_000;
        let set = adlv_points(&cfg).unwrap();
        // the five shift-power points are all rational over the prime field
        assert!(set.points.iter().all(|p| p.field_degree == 1));
        assert_eq!(set.points.len(), 5);
        // no record is listed twice
        let mut seen = set.points.clone();
        seen.dedup();
        assert_eq!(seen.len(), set.points.len());
    }

    #[test]
    fn point_enumeration_is_deterministic() {
        let mut cfg = sb_gl2(vec![1, 0]);
        cfg.m_max = 2;
        cfg.depth = 1;
        cfg.max_lattices = 100_000;
        let a = adlv_points(&cfg).unwrap();
        let b = adlv_points(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn oversized_windows_are_refused() {
        let mut cfg = sb_gl2(vec![1, 0]);
        cfg.max_lattices = 5;
        assert!(matches!(adlv_points(&cfg), Err(Error::ResourceExhausted(_))));
    }

    #[test]
    fn dominance_comparison_is_the_partial_sum_test() {
        assert!(leq_dominance(&[1, 1], &[2, 0]));
        assert!(leq_dominance(&[2, 0], &[2, 0]));
        assert!(!leq_dominance(&[2, 0], &[1, 1]));
        assert!(!leq_dominance(&[1, 0], &[2, 0]));
        assert!(!leq_dominance(&[1], &[1, 0]));
    }
}
