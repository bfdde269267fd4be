//! Named root-datum presets.
//!
//! Available presets (parameters in braces):
//!
//! * `GL {n}`: rank n, simple roots e_i - e_{i+1}, trivial sigma.
//! * `SL {n}` / `PGL {n}`: simply connected / adjoint type A_{n-1}.
//! * `ResGL {n, d}`: d copies of GL_n with sigma cycling the copies.
//! * `GU {n}`: rank n+1 model of a quasi-split unitary group: GL_n x GL_1
//!   over the function field, sigma(e_i) = -e_{n+1-i} twisted by the extra
//!   central coordinate.
//! * `GSp {n}` (n even): rank n/2 + 1 model with similitude coordinate,
//!   type C_{n/2}.
//! * `SO {n}` (n even >= 6): type D_{n/2} on Z^{n/2}; `quasi_split: 1` adds
//!   the order-2 twist e_h -> -e_h.
//! * `adjoint-A/C/D {rank, twist}` and `sc-A/C/D {rank, twist}`: generic
//!   adjoint / simply connected data from the Cartan matrix; `twist` selects
//!   a diagram automorphism (0 = none, 1 = flip/swap, 3 = triality on D4).
//! * `D4-triality`: shorthand for sc-D rank 4 with the order-3 twist.

use super::RootDatum;
use crate::error::{Error, Result};
use crate::linalg::IMat;
use crate::Int;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

pub fn preset(name: &str, params: &BTreeMap<String, i64>) -> Result<RootDatum> {
    let get = |key: &str| -> Result<i64> {
        params
            .get(key)
            .copied()
            .ok_or_else(|| Error::InvalidInput(format!("preset {name} needs parameter {key}")))
    };
    let get_or = |key: &str, default: i64| params.get(key).copied().unwrap_or(default);
    match name {
        "GL" => gl(usize_param(get("n")?, 1, "n")?),
        "SL" => {
            let n = usize_param(get("n")?, 2, "n")?;
            from_cartan(format!("SL({n})"), cartan_a(n - 1), identity_perm(n - 1), true)
        }
        "PGL" => {
            let n = usize_param(get("n")?, 2, "n")?;
            from_cartan(format!("PGL({n})"), cartan_a(n - 1), identity_perm(n - 1), false)
        }
        "ResGL" => res_gl(
            usize_param(get("n")?, 1, "n")?,
            usize_param(get("d")?, 1, "d")?,
        ),
        "GU" => gu(usize_param(get("n")?, 2, "n")?),
        "GSp" => {
            let n = usize_param(get("n")?, 2, "n")?;
            if n % 2 != 0 {
                return Err(Error::InvalidInput("GSp needs an even parameter n".into()));
            }
            gsp(n / 2)
        }
        "SO" => {
            let n = usize_param(get("n")?, 6, "n")?;
            if n % 2 != 0 {
                return Err(Error::InvalidInput("SO preset needs an even parameter n".into()));
            }
            so_even(n / 2, get_or("quasi_split", 0) != 0)
        }
        "adjoint-A" | "sc-A" => {
            let r = usize_param(get("rank")?, 1, "rank")?;
            let t = get_or("twist", 0);
            let perm = match t {
                0 => identity_perm(r),
                1 => (0..r).rev().collect(),
                _ => return Err(Error::InvalidInput("type A twist must be 0 or 1".into())),
            };
            let sc = name.starts_with("sc");
            from_cartan(format!("{name}{r}-twist{t}"), cartan_a(r), perm, sc)
        }
        "adjoint-C" | "sc-C" => {
            let r = usize_param(get("rank")?, 2, "rank")?;
            let t = get_or("twist", 0);
            if t != 0 {
                return Err(Error::InvalidInput("type C has no diagram twist".into()));
            }
            let sc = name.starts_with("sc");
            from_cartan(format!("{name}{r}-twist{t}"), cartan_c(r), identity_perm(r), sc)
        }
        "adjoint-D" | "sc-D" => {
            let r = usize_param(get("rank")?, 3, "rank")?;
            let t = get_or("twist", 0);
            let perm = match (t, r) {
                (0, _) => identity_perm(r),
                (1, _) => {
                    let mut p = identity_perm(r);
                    p.swap(r - 2, r - 1);
                    p
                }
                (3, 4) => vec![2, 1, 3, 0],
                _ => {
                    return Err(Error::InvalidInput(
                        "type D twist must be 0, 1, or 3 (rank 4 only)".into(),
                    ))
                }
            };
            let sc = name.starts_with("sc");
            from_cartan(format!("{name}{r}-twist{t}"), cartan_d(r), perm, sc)
        }
        "D4-triality" => from_cartan("D4-triality".into(), cartan_d(4), vec![2, 1, 3, 0], true),
        "ProdGL" => prod_gl(usize_param(get("a")?, 1, "a")?, usize_param(get("b")?, 1, "b")?),
        _ => Err(Error::InvalidInput(format!("unknown preset {name}"))),
    }
}

fn usize_param(v: i64, min: i64, key: &str) -> Result<usize> {
    if v < min || v > 64 {
        return Err(Error::InvalidInput(format!("parameter {key} = {v} out of range")));
    }
    Ok(v as usize)
}

fn identity_perm(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn e(rank: usize, i: usize) -> Vec<Int> {
    let mut v = vec![Int::zero(); rank];
    v[i] = Int::one();
    v
}

fn perm_matrix(perm: &[usize]) -> IMat {
    let n = perm.len();
    let mut m = IMat::zero(n, n);
    for (i, &pi) in perm.iter().enumerate() {
        m.set(pi, i, Int::one());
    }
    m
}

fn gl(n: usize) -> Result<RootDatum> {
    let mut ch = Vec::new();
    let mut cov = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let mut v = vec![Int::zero(); n];
        v[i] = Int::one();
        v[i + 1] = -Int::one();
        ch.push(v.clone());
        cov.push(v);
    }
    RootDatum::build(format!("GL({n})"), ch, cov, IMat::identity(n), IMat::identity(n))
}

/// Split product GL(a) x GL(b) on one cocharacter lattice, sigma = id.
fn prod_gl(a: usize, b: usize) -> Result<RootDatum> {
    let rank = a + b;
    let mut ch = Vec::new();
    for block in [(0, a), (a, b)] {
        for i in block.0..block.0 + block.1 - 1 {
            let mut v = vec![Int::zero(); rank];
            v[i] = Int::one();
            v[i + 1] = -Int::one();
            ch.push(v);
        }
    }
    let cov = ch.clone();
    RootDatum::build(format!("GL({a})xGL({b})"), ch, cov, IMat::identity(rank), IMat::identity(rank))
}

fn res_gl(n: usize, d: usize) -> Result<RootDatum> {
    let rank = n * d;
    let mut ch = Vec::new();
    for b in 0..d {
        for i in 0..n.saturating_sub(1) {
            let mut v = vec![Int::zero(); rank];
            v[b * n + i] = Int::one();
            v[b * n + i + 1] = -Int::one();
            ch.push(v);
        }
    }
    let cov = ch.clone();
    // sigma shifts blocks cyclically: e_{b,i} -> e_{b+1,i}
    let mut sigma = IMat::zero(rank, rank);
    for b in 0..d {
        for i in 0..n {
            sigma.set(((b + 1) % d) * n + i, b * n + i, Int::one());
        }
    }
    RootDatum::build(format!("ResGL({n},{d})"), ch, cov, IMat::identity(rank), sigma)
}

fn gu(n: usize) -> Result<RootDatum> {
    let rank = n + 1; // e_1..e_n, c
    let mut ch = Vec::new();
    let mut cov = Vec::new();
    for i in 0..n - 1 {
        let mut v = vec![Int::zero(); rank];
        v[i] = Int::one();
        v[i + 1] = -Int::one();
        ch.push(v.clone());
        cov.push(v);
    }
    // sigma(e_i) = -e_{n+1-i}, sigma(c) = e_1 + ... + e_n + c
    let mut sigma = IMat::zero(rank, rank);
    for i in 0..n {
        sigma.set(n - 1 - i, i, -Int::one());
    }
    for j in 0..n {
        sigma.set(j, n, Int::one());
    }
    sigma.set(n, n, Int::one());
    RootDatum::build(format!("GU({n})"), ch, cov, IMat::identity(rank), sigma)
}

fn gsp(h: usize) -> Result<RootDatum> {
    let rank = h + 1; // e_1..e_h, c
    let mut ch = Vec::new();
    let mut cov = Vec::new();
    for i in 0..h - 1 {
        let mut v = vec![Int::zero(); rank];
        v[i] = Int::one();
        v[i + 1] = -Int::one();
        ch.push(v.clone());
        cov.push(v);
    }
    // long root 2e_h - c with coroot e_h
    let mut long_ch = vec![Int::zero(); rank];
    long_ch[h - 1] = Int::from(2);
    long_ch[h] = -Int::one();
    ch.push(long_ch);
    cov.push(e(rank, h - 1));
    RootDatum::build(format!("GSp({})", 2 * h), ch, cov, IMat::identity(rank), IMat::identity(rank))
}

fn so_even(h: usize, quasi: bool) -> Result<RootDatum> {
    let mut ch = Vec::new();
    for i in 0..h - 1 {
        let mut v = vec![Int::zero(); h];
        v[i] = Int::one();
        v[i + 1] = -Int::one();
        ch.push(v);
    }
    let mut v = vec![Int::zero(); h];
    v[h - 2] = Int::one();
    v[h - 1] = Int::one();
    ch.push(v);
    let cov = ch.clone();
    let mut sigma = IMat::identity(h);
    if quasi {
        sigma.set(h - 1, h - 1, -Int::one());
    }
    let name = if quasi { format!("quasi-split SO({})", 2 * h) } else { format!("SO({})", 2 * h) };
    RootDatum::build(name, ch, cov, IMat::identity(h), sigma)
}

fn cartan_a(r: usize) -> IMat {
    let mut c = IMat::zero(r, r);
    for i in 0..r {
        c.set(i, i, Int::from(2));
        if i + 1 < r {
            c.set(i, i + 1, -Int::one());
            c.set(i + 1, i, -Int::one());
        }
    }
    c
}

/// Type C_r with the long root last: C[r-1][r-2] = -2.
fn cartan_c(r: usize) -> IMat {
    let mut c = cartan_a(r);
    c.set(r - 1, r - 2, -Int::from(2));
    c
}

/// Type D_r: chain 0..r-3, with r-2 and r-1 both attached to r-3.
fn cartan_d(r: usize) -> IMat {
    let mut c = IMat::zero(r, r);
    for i in 0..r {
        c.set(i, i, Int::from(2));
    }
    for i in 0..r.saturating_sub(3) {
        c.set(i, i + 1, -Int::one());
        c.set(i + 1, i, -Int::one());
    }
    if r >= 3 {
        c.set(r - 3, r - 2, -Int::one());
        c.set(r - 2, r - 3, -Int::one());
        c.set(r - 3, r - 1, -Int::one());
        c.set(r - 1, r - 3, -Int::one());
    }
    c
}

/// Build a datum from a Cartan matrix: simply connected (cocharacters = coroot
/// lattice) or adjoint (cocharacters = coweight lattice). `perm` is a diagram
/// automorphism acting on the distinguished lattice basis.
fn from_cartan(name: String, cartan: IMat, perm: Vec<usize>, simply_connected: bool) -> Result<RootDatum> {
    let r = cartan.rows;
    for i in 0..r {
        for j in 0..r {
            if cartan.get(perm[i], perm[j]) != cartan.get(i, j) {
                return Err(Error::InvalidInput(
                    "twist is not an automorphism of the Cartan matrix".into(),
                ));
            }
        }
    }
    let (ch, cov): (Vec<Vec<Int>>, Vec<Vec<Int>>) = if simply_connected {
        // basis = simple coroots: coroot i is e_i, root j is row j of Cartan
        ((0..r).map(|j| cartan.row_vec(j)).collect(), (0..r).map(|i| e(r, i)).collect())
    } else {
        // basis = fundamental coweights: root j is e_j, coroot i is column i
        ((0..r).map(|j| e(r, j)).collect(), (0..r).map(|i| cartan.col_vec(i)).collect())
    };
    RootDatum::build(name, ch, cov, IMat::identity(r), perm_matrix(&perm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::LeviSubset;

    fn p(name: &str, params: &[(&str, i64)]) -> RootDatum {
        preset(name, &params.iter().map(|(k, v)| (k.to_string(), *v)).collect()).unwrap()
    }

    #[test]
    fn preset_root_counts() {
        assert_eq!(p("GL", &[("n", 4)]).n_positive, 6);
        assert_eq!(p("ResGL", &[("n", 2), ("d", 3)]).n_positive, 3);
        assert_eq!(p("GU", &[("n", 5)]).n_positive, 10);
        assert_eq!(p("GSp", &[("n", 4)]).n_positive, 4);
        assert_eq!(p("SO", &[("n", 8)]).n_positive, 12);
        assert_eq!(p("PGL", &[("n", 3)]).n_positive, 3);
        assert_eq!(p("SL", &[("n", 3)]).n_positive, 3);
        assert_eq!(p("D4-triality", &[]).n_positive, 12);
        assert_eq!(p("adjoint-D", &[("rank", 4), ("twist", 1)]).n_positive, 12);
        assert_eq!(p("sc-C", &[("rank", 3)]).n_positive, 9);
    }

    #[test]
    fn gu_sigma_order_and_simple_permutation() {
        let rd = p("GU", &[("n", 5)]);
        assert_eq!(rd.sigma_order, 2);
        // sigma swaps beta_i and beta_{n-i}
        assert_eq!(rd.simple_perm, vec![3, 2, 1, 0]);
        let rd = p("GU", &[("n", 3)]);
        assert_eq!(rd.simple_perm, vec![1, 0]);
    }

    #[test]
    fn triality_has_order_three() {
        let rd = p("D4-triality", &[]);
        assert_eq!(rd.sigma_order, 3);
        assert_eq!(rd.simple_perm, vec![2, 1, 3, 0]);
        let orbits = rd.simple_orbits();
        assert_eq!(orbits.len(), 2);
        assert_eq!(orbits[0], vec![0, 2, 3]);
        assert_eq!(orbits[1], vec![1]);
    }

    #[test]
    fn quasi_split_so_swaps_fork() {
        let rd = p("SO", &[("n", 8), ("quasi_split", 1)]);
        assert_eq!(rd.sigma_order, 2);
        assert_eq!(rd.simple_perm, vec![0, 1, 3, 2]);
    }

    #[test]
    fn weyl_sizes() {
        let rd = p("GSp", &[("n", 4)]);
        assert_eq!(rd.weyl_group(&LeviSubset::full(2)).len(), 8);
        let rd = p("D4-triality", &[]);
        assert_eq!(rd.weyl_group(&LeviSubset::full(4)).len(), 192);
    }

    #[test]
    fn rejects_bad_params() {
        assert!(preset("GSp", &[("n".to_string(), 3)].into_iter().collect()).is_err());
        assert!(preset("nosuch", &BTreeMap::new()).is_err());
        assert!(preset(
            "adjoint-C",
            &[("rank".to_string(), 2), ("twist".to_string(), 1)].into_iter().collect()
        )
        .is_err());
    }
}
