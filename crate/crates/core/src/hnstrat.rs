//! Membership test for the set of classes bounded by mu, the decomposability
//! trichotomy, and the reduction of a pair (mu, b) to a Levi where it is
//! indecomposable.
//!
//! All classification runs relative to the ambient Levi carried by the
//! representative (the full group when none is set), so a reduced pair can be
//! re-classified inside its reduction Levi with the same entry points.
//! "Defined over the base field" means sigma-stable, so Levi enumeration runs
//! over unions of sigma-orbits of simple roots.

use crate::error::{Error, Result};
use crate::isocrystal::{self, BRep, BRepSpec, CoinvClass};
use crate::linalg::{self, IMat};
use crate::pi1lat::Pi1Group;
use crate::rootdata::{LeviSubset, RootDatum};
use crate::{Int, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// Galois average of a cocharacter.
pub fn mu_bar(rd: &RootDatum, mu: &[Int]) -> Vec<Rat> {
    let mut acc = vec![Rat::zero(); rd.rank];
    let mut cur = crate::to_rat_vec(mu);
    for _ in 0..rd.sigma_order {
        for (a, c) in acc.iter_mut().zip(&cur) {
            *a += c;
        }
        cur = rd.sigma_cov_rat(&cur);
    }
    let n = Rat::from_integer(Int::from(rd.sigma_order as i64));
    acc.into_iter().map(|a| a / &n).collect()
}

/// Certificate for membership of b in the set of classes bounded by mu
/// relative to the Levi L.
#[derive(Clone, Debug, Serialize)]
pub struct BGMuCertificate {
    pub member: bool,
    pub kappa_match: bool,
    pub kappa_b: CoinvClass,
    pub kappa_mu: CoinvClass,
    pub dominance_ok: bool,
    /// Coefficients of the Galois-averaged mu minus the L-dominant Newton
    /// point over the simple coroots of L, when that difference lies in
    /// their span (ordered like L's indices).
    #[serde(with = "crate::serial::rvec_opt")]
    pub expansion: Option<Vec<Rat>>,
    pub reason: String,
}

/// b lies in the set bounded by mu for the Levi L iff the Kottwitz points
/// agree in the coinvariants of pi1(L) and the averaged mu dominates the
/// L-dominant Newton point within L's coroot cone.
pub fn in_b_g_mu(rd: &RootDatum, b: &BRep, mu: &[Int], l: &LeviSubset) -> Result<BGMuCertificate> {
    if mu.len() != rd.rank {
        return Err(Error::InvalidInput("mu has the wrong rank".into()));
    }
    if !rd.is_dominant(mu, l) {
        return Err(Error::Precondition("mu must be dominant for the Levi".into()));
    }
    let kappa_b = isocrystal::kottwitz_point(rd, b, l)?;
    let p = Pi1Group::new(rd, l);
    let kappa_mu = isocrystal::kappa_of_cochar(rd, &p, mu)?;
    let kappa_match = kappa_b == kappa_mu;

    let nu = isocrystal::newton_point(rd, b)?;
    let (nu_l, _) = rd.dominant_rep_rat(&nu.raw, l);
    let bar = mu_bar(rd, mu);
    let diff: Vec<Rat> = bar.iter().zip(&nu_l).map(|(a, b)| a - b).collect();
    let expansion = rd.coroot_expansion_rat(&diff, l);
    let dominance_ok = match &expansion {
        Some(c) => c.iter().all(|x| !x.is_negative()),
        None => false,
    };
    let member = kappa_match && dominance_ok;
    let reason = if !kappa_match {
        "kappa classes differ".to_string()
    } else if !dominance_ok {
        match &expansion {
            None => "averaged mu minus Newton point is outside the coroot span".to_string(),
            Some(_) => "averaged mu minus Newton point has a negative coefficient".to_string(),
        }
    } else {
        "member".to_string()
    };
    Ok(BGMuCertificate { member, kappa_match, kappa_b, kappa_mu, dominance_ok, expansion, reason })
}

/// Conjugate (lambda, w) inside the ambient Levi by the Weyl element that
/// dominantizes the Newton average: the result has ambient-dominant raw
/// Newton point, and its Weyl part centralizes that point. Returns the new
/// representative with its Newton point.
pub fn normalize(rd: &RootDatum, b: &BRep) -> Result<(BRep, Vec<Rat>)> {
    let ambient = b.ambient_levi(rd);
    let nu = isocrystal::newton_point(rd, b)?;
    let (nu_amb, u) = rd.dominant_rep_rat(&nu.raw, &ambient);
    let lambda = u.act_cov(&b.lambda);
    let w = rd.weyl_mul(&rd.weyl_mul(&u, &b.w), &rd.weyl_inv(&rd.sigma_conj(&u)));
    let b2 = BRep::new(rd, lambda, w, b.levi.clone())?;
    let nu2 = isocrystal::newton_point(rd, &b2)?;
    assert_eq!(nu2.raw, nu_amb, "normalized representative has dominant Newton average");
    assert_eq!(rd.sigma_cov_rat(&nu_amb), nu_amb, "dominant Newton point is Galois-invariant");
    let m_b = newton_centralizer(rd, &ambient, &nu_amb);
    assert!(rd.weyl_in_levi(&b2.w, &m_b), "Weyl part centralizes a dominant Newton point");
    Ok((b2, nu_amb))
}

/// Simple roots of the ambient Levi pairing to zero with the Newton point.
fn newton_centralizer(rd: &RootDatum, ambient: &LeviSubset, nu: &[Rat]) -> LeviSubset {
    LeviSubset::from_indices(
        &ambient
            .indices()
            .into_iter()
            .filter(|&i| rd.pairing_rat(&rd.simple_ch[i], nu).is_zero())
            .collect::<Vec<_>>(),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HNClass {
    Irreducible,
    IndecomposableCentral,
    /// Indecomposable on a group whose adjoint quotient is not simple over
    /// the base field, with irreducible data on some factors and central
    /// data on the others. Never produced on simple adjoint data.
    IndecomposableMixed,
    Decomposable,
}

/// Partition of the ambient simple roots into Galois-simple factors carrying
/// irreducible data and factors where b is equivalent to the central p^mu.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorSplit {
    pub irreducible: LeviSubset,
    pub central: LeviSubset,
}

#[derive(Clone, Debug, Serialize)]
pub struct HNReport {
    pub in_b_g_mu: BGMuCertificate,
    #[serde(with = "crate::serial::rvec")]
    pub mu_bar: Vec<Rat>,
    #[serde(with = "crate::serial::rvec")]
    pub nu_dom: Vec<Rat>,
    pub hn_class: HNClass,
    /// Condition (1): no proper stable Levi carries a class with the same
    /// Newton point and a matching Kottwitz point.
    pub verdict_irreducible: bool,
    /// Condition (2): no proper stable Levi has averaged mu dominating the
    /// Newton point within that Levi's coroot cone.
    pub verdict_no_levi_bound: bool,
    /// Condition (3): all simple-coroot coefficients of averaged mu minus
    /// the Newton point are strictly positive.
    pub verdict_positive_coeffs: bool,
    pub reduction_levi: LeviSubset,
    pub factor_split: Option<FactorSplit>,
    pub normalized: BRepSpec,
}

/// Does the proper stable Levi M carry a class with Newton point nu and
/// Kottwitz point mu? Basic classes of the centralizer-in-M Levi of nu are
/// parametrized by the coinvariants of its fundamental-group lattice, so the
/// question becomes an integer linear system: the Galois average of a lift
/// must equal nu modulo that Levi's coroot span, and the induced class in
/// the coinvariants for M must be mu's.
fn levi_carries_class(rd: &RootDatum, m: &LeviSubset, nu: &[Rat], mu: &[Int]) -> Result<bool> {
    let mp = newton_centralizer(rd, m, nu);
    let pp = Pi1Group::new(rd, &mp);
    let qp = pp.coinvariants()?;
    let pm = Pi1Group::new(rd, m);
    let qm = pm.coinvariants()?;

    // cocharacter-lattice lift of a coinvariant coordinate vector
    let lift = pp.pres.lift.mul(&qp.lift);

    // rows annihilating the rational span of the centralizer's coroots
    let y_rows: Vec<Vec<Int>> = if mp.is_empty() {
        (0..rd.rank)
            .map(|i| {
                let mut e = vec![Int::zero(); rd.rank];
                e[i] = Int::one();
                e
            })
            .collect()
    } else {
        let cols: Vec<Vec<Int>> = mp.indices().iter().map(|&i| rd.simple_cov[i].clone()).collect();
        linalg::kernel_basis(&IMat::from_cols(cols).transpose())
    };
    let y = IMat::from_rows(y_rows);

    // sum of the sigma powers and a common denominator for nu
    let mut s = IMat::zero(rd.rank, rd.rank);
    let mut pow = IMat::identity(rd.rank);
    for _ in 0..rd.sigma_order {
        s = s.add(&pow);
        pow = pow.mul(&rd.sigma);
    }
    let mut d = Int::one();
    for x in nu {
        d = d.lcm(x.denom());
    }
    let n_sigma = Int::from(rd.sigma_order as i64);

    let newton_mat = y.mul(&s).mul(&lift);
    let n_torsion = qm.torsion.len();
    let mut rows: Vec<Vec<Int>> = Vec::new();
    let mut rhs: Vec<Int> = Vec::new();
    for i in 0..newton_mat.rows {
        let mut row: Vec<Int> = newton_mat.row_vec(i).iter().map(|x| x * &d).collect();
        row.extend(std::iter::repeat(Int::zero()).take(n_torsion));
        let target: Rat = y
            .row_vec(i)
            .iter()
            .zip(nu)
            .map(|(c, x)| Rat::from_integer(c.clone()) * x)
            .sum();
        let scaled = target * Rat::from_integer(&n_sigma * &d);
        assert!(scaled.is_integer());
        rows.push(row);
        rhs.push(scaled.to_integer());
    }

    // Kottwitz block: the class induced in the coinvariants for M equals
    // mu's, with torsion relations absorbed by extra unknowns.
    let kappa_map = qm.proj.mul(&pm.pres.proj).mul(&lift);
    let target = qm.project(&pm.project(mu));
    let zero_rows = qm.zero_lattice();
    for i in 0..qm.dim() {
        let mut row = kappa_map.row_vec(i);
        for z in &zero_rows {
            row.push(z[i].clone());
        }
        rows.push(row);
        rhs.push(target[i].clone());
    }
    Ok(linalg::solve_int(&IMat::from_rows(rows), &rhs).is_some())
}

/// Classify (mu, b) within the ambient Levi of b: decomposable, irreducible,
/// the central case where b is equivalent to p^mu with mu central, or mixed
/// across Galois-simple factors.
pub fn hn_classify(rd: &RootDatum, b: &BRep, mu: &[Int]) -> Result<HNReport> {
    let ambient = b.ambient_levi(rd);
    let membership = in_b_g_mu(rd, b, mu, &ambient)?;
    if !membership.member {
        return Err(Error::EmptyClass(format!(
            "pair is outside the bounded set: {}",
            membership.reason
        )));
    }
    let (bn, nu) = normalize(rd, b)?;
    let m_b = newton_centralizer(rd, &ambient, &nu);
    let bar = mu_bar(rd, mu);

    let levis: Vec<LeviSubset> = rd
        .sigma_stable_levis()
        .into_iter()
        .filter(|m| m.is_subset(&ambient))
        .collect();

    // decomposability: a proper stable Levi containing the Newton
    // centralizer on which the Kottwitz points already agree
    let mut matching: Vec<&LeviSubset> = Vec::new();
    for m in &levis {
        if !m_b.is_subset(m) {
            continue;
        }
        let pm = Pi1Group::new(rd, m);
        let kb = isocrystal::kottwitz_point(rd, &bn, m)?;
        let km = isocrystal::kappa_of_cochar(rd, &pm, mu)?;
        if kb == km {
            matching.push(m);
        }
    }
    assert!(
        matching.iter().any(|m| **m == ambient),
        "the ambient Levi always matches once membership holds"
    );
    let reduction_levi = (*matching
        .iter()
        .min_by_key(|m| (m.len(), m.indices()))
        .expect("at least the ambient Levi matches"))
    .clone();
    let decomposable = reduction_levi != ambient;

    // condition (3): strictly positive coefficients everywhere
    let diff: Vec<Rat> = bar.iter().zip(&nu).map(|(a, b)| a - b).collect();
    let coeffs = rd.coroot_expansion_rat(&diff, &ambient);
    let verdict_positive_coeffs = match &coeffs {
        Some(c) => c.iter().all(|x| x.is_positive()),
        None => false,
    };

    // condition (2): no proper stable Levi bounds nu by averaged mu
    let mut verdict_no_levi_bound = true;
    for m in &levis {
        if *m == ambient {
            continue;
        }
        if rd.dominance_rat(&nu, &bar, m, false)? {
            verdict_no_levi_bound = false;
            break;
        }
    }

    // condition (1): no proper stable Levi carries the (Newton, Kottwitz)
    // pair of the class
    let mut verdict_irreducible = true;
    for m in &levis {
        if *m == ambient {
            continue;
        }
        if levi_carries_class(rd, m, &nu, mu)? {
            verdict_irreducible = false;
            break;
        }
    }

    let (hn_class, factor_split) = if decomposable {
        assert!(!verdict_irreducible, "a decomposing Levi also carries the class");
        (HNClass::Decomposable, None)
    } else {
        let split = split_central_factors(rd, mu, &bn)?;
        let class = if split.central.is_empty() {
            assert!(verdict_positive_coeffs, "no central factor means positive coefficients");
            assert!(
                verdict_irreducible && verdict_no_levi_bound,
                "equivalent irreducibility conditions must agree"
            );
            HNClass::Irreducible
        } else if split.irreducible.is_empty() {
            assert_eq!(nu, bar, "central case has Newton point equal to averaged mu");
            for i in ambient.indices() {
                assert!(
                    rd.pairing(&rd.simple_ch[i], mu).is_zero(),
                    "central case needs mu central"
                );
            }
            assert!(!verdict_irreducible, "the torus carries the central class");
            HNClass::IndecomposableCentral
        } else {
            assert!(!verdict_irreducible && !verdict_positive_coeffs);
            HNClass::IndecomposableMixed
        };
        (class, Some(split))
    };

    Ok(HNReport {
        in_b_g_mu: membership,
        mu_bar: bar,
        nu_dom: nu,
        hn_class,
        verdict_irreducible,
        verdict_no_levi_bound,
        verdict_positive_coeffs,
        reduction_levi,
        factor_split,
        normalized: bn.to_spec(),
    })
}

/// Smallest sigma-stable standard Levi containing the Newton centralizer on
/// which the Kottwitz points of b and mu agree, together with b normalized
/// and re-homed there. The pair is indecomposable inside that Levi.
pub fn reduce_to_indecomposable(
    rd: &RootDatum,
    b: &BRep,
    mu: &[Int],
) -> Result<(LeviSubset, BRep)> {
    let report = hn_classify(rd, b, mu)?;
    let m = report.reduction_levi.clone();
    let bn = BRep::from_spec(rd, &report.normalized)?;
    let b2 = BRep::new(rd, bn.lambda, bn.w, Some(m.clone()))?;
    // membership transfers to the reduction Levi
    let cert = in_b_g_mu(rd, &b2, mu, &m)?;
    assert!(cert.member, "reduction Levi must keep the pair inside its bounded set");
    let inner = hn_classify(rd, &b2, mu)?;
    assert_ne!(inner.hn_class, HNClass::Decomposable, "reduction is minimal");
    Ok((m, b2))
}

/// Partition the Galois-simple factors of the ambient Levi into those where
/// the coefficients of averaged-mu-minus-Newton are all positive
/// (irreducible part) and those where they all vanish (b equivalent to the
/// central p^mu there). Requires an indecomposable pair; mixed signs inside
/// one factor would contradict the factorwise trichotomy.
pub fn split_central_factors(rd: &RootDatum, mu: &[Int], b: &BRep) -> Result<FactorSplit> {
    let ambient = b.ambient_levi(rd);
    let nu = isocrystal::newton_point(rd, b)?;
    let (nu_amb, _) = rd.dominant_rep_rat(&nu.raw, &ambient);
    let bar = mu_bar(rd, mu);
    let diff: Vec<Rat> = bar.iter().zip(&nu_amb).map(|(a, b)| a - b).collect();
    let coeffs = rd
        .coroot_expansion_rat(&diff, &ambient)
        .ok_or_else(|| Error::Precondition("difference is outside the coroot span".into()))?;
    let idx = ambient.indices();
    let coeff_of = |i: usize| -> &Rat {
        let k = idx.iter().position(|&j| j == i).unwrap();
        &coeffs[k]
    };

    // Galois-simple factors: sigma-orbits of Dynkin components
    let simple_ids: Vec<usize> = idx.iter().map(|&i| rd.simple_root_id(i)).collect();
    let components = rd.components_of(&simple_ids);
    let comp_of = |i: usize| -> usize {
        let id = rd.simple_root_id(i);
        components.iter().position(|c| c.contains(&id)).unwrap()
    };
    let mut factor_of = vec![usize::MAX; components.len()];
    let mut n_factors = 0;
    for c in 0..components.len() {
        if factor_of[c] != usize::MAX {
            continue;
        }
        let f = n_factors;
        n_factors += 1;
        let mut cur = c;
        loop {
            factor_of[cur] = f;
            let rep = components[cur][0];
            let i = idx.iter().copied().find(|&i| rd.simple_root_id(i) == rep).unwrap();
            cur = comp_of(rd.simple_perm[i]);
            if factor_of[cur] != usize::MAX {
                break;
            }
        }
    }

    let mut irreducible = Vec::new();
    let mut central = Vec::new();
    for f in 0..n_factors {
        let members: Vec<usize> =
            idx.iter().copied().filter(|&i| factor_of[comp_of(i)] == f).collect();
        let pos = members.iter().filter(|&&i| coeff_of(i).is_positive()).count();
        let zero = members.iter().filter(|&&i| coeff_of(i).is_zero()).count();
        if pos == members.len() {
            irreducible.extend(members);
        } else if zero == members.len() {
            central.extend(members);
        } else {
            return Err(Error::Internal(
                "mixed coefficient signs inside one Galois-simple factor".into(),
            ));
        }
    }
    Ok(FactorSplit {
        irreducible: LeviSubset::from_indices(&irreducible),
        central: LeviSubset::from_indices(&central),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::presets;
    use crate::{ivec, rat};

    fn p(name: &str, params: &[(&str, i64)]) -> RootDatum {
        presets::preset(name, &params.iter().map(|(k, v)| (k.to_string(), *v)).collect()).unwrap()
    }

    fn full(rd: &RootDatum) -> LeviSubset {
        LeviSubset::full(rd.n_simple())
    }

    #[test]
    fn mu_bar_examples() {
        let rd = p("GL", &[("n", 3)]);
        assert_eq!(mu_bar(&rd, &ivec(&[1, 0, 0])), crate::to_rat_vec(&ivec(&[1, 0, 0])));
        let rd = p("ResGL", &[("n", 1), ("d", 2)]);
        assert_eq!(mu_bar(&rd, &ivec(&[1, 0])), vec![rat(1, 2), rat(1, 2)]);
        // averaged value is always Galois-invariant
        let rd = p("GU", &[("n", 5)]);
        let bar = mu_bar(&rd, &ivec(&[1, 1, 0, 1, 0, 1]));
        assert_eq!(rd.sigma_cov_rat(&bar), bar);
    }

    #[test]
    fn membership_frozen_examples() {
        let rd = p("GL", &[("n", 2)]);
        let b = BRep::new(&rd, ivec(&[1, 0]), rd.weyl_simple(0), None).unwrap();
        let cert = in_b_g_mu(&rd, &b, &ivec(&[1, 0]), &full(&rd)).unwrap();
        assert!(cert.member);
        assert_eq!(cert.expansion, Some(vec![rat(1, 2)]));

        let cert = in_b_g_mu(&rd, &b, &ivec(&[2, 0]), &full(&rd)).unwrap();
        assert!(!cert.member);
        assert!(!cert.kappa_match);

        let rd = p("GL", &[("n", 3)]);
        let b = BRep::translation(&rd, ivec(&[2, -1, 0])).unwrap();
        let cert = in_b_g_mu(&rd, &b, &ivec(&[1, 0, 0]), &full(&rd)).unwrap();
        assert!(!cert.member);
        assert!(cert.kappa_match);
        assert!(!cert.dominance_ok);
        // dominant rep of the Newton point is (2, 0, -1); the difference
        // expands with mixed signs
        assert!(cert.expansion.is_some());
        assert!(cert.expansion.unwrap().iter().any(|x| x.is_negative()));
    }

    #[test]
    fn classify_irreducible_block_case() {
        let rd = p("GL", &[("n", 4)]);
        let w = rd.weyl_mul(&rd.weyl_simple(0), &rd.weyl_simple(2));
        let b = BRep::new(&rd, ivec(&[1, 0, 1, 0]), w, None).unwrap();
        let r = hn_classify(&rd, &b, &ivec(&[1, 1, 0, 0])).unwrap();
        assert_eq!(r.hn_class, HNClass::Irreducible);
        assert!(r.verdict_irreducible && r.verdict_no_levi_bound && r.verdict_positive_coeffs);
        assert_eq!(r.reduction_levi, full(&rd));
        // frozen coefficients of the coroot expansion
        let diff: Vec<Rat> = r.mu_bar.iter().zip(&r.nu_dom).map(|(a, b)| a - b).collect();
        let c = rd.coroot_expansion_rat(&diff, &full(&rd)).unwrap();
        assert_eq!(c, vec![rat(1, 2), rat(1, 1), rat(1, 2)]);
        let split = r.factor_split.unwrap();
        assert_eq!(split.irreducible, full(&rd));
        assert!(split.central.is_empty());
    }

    #[test]
    fn classify_central_case() {
        let rd = p("GL", &[("n", 2)]);
        let b = BRep::translation(&rd, ivec(&[1, 1])).unwrap();
        let r = hn_classify(&rd, &b, &ivec(&[1, 1])).unwrap();
        assert_eq!(r.hn_class, HNClass::IndecomposableCentral);
        assert!(!r.verdict_irreducible);
        assert!(!r.verdict_positive_coeffs);
        assert!(!r.verdict_no_levi_bound);
        let split = r.factor_split.unwrap();
        assert!(split.irreducible.is_empty());
        assert_eq!(split.central, full(&rd));
    }

    #[test]
    fn classify_decomposable_case() {
        let rd = p("GL", &[("n", 2)]);
        let b = BRep::translation(&rd, ivec(&[1, 0])).unwrap();
        let r = hn_classify(&rd, &b, &ivec(&[1, 0])).unwrap();
        assert_eq!(r.hn_class, HNClass::Decomposable);
        assert_eq!(r.reduction_levi, LeviSubset::torus());
        assert!(!r.verdict_irreducible);
        let (m, b2) = reduce_to_indecomposable(&rd, &b, &ivec(&[1, 0])).unwrap();
        assert_eq!(m, LeviSubset::torus());
        assert_eq!(b2.lambda, ivec(&[1, 0]));
        assert!(b2.w.is_identity());
        // on the torus the pair classifies as irreducible: the coset answer
        let r2 = hn_classify(&rd, &b2, &ivec(&[1, 0])).unwrap();
        assert_eq!(r2.hn_class, HNClass::Irreducible);
    }

    #[test]
    fn reduce_block_levi_case() {
        let rd = p("GL", &[("n", 4)]);
        let b = BRep::translation(&rd, ivec(&[1, 1, 0, 0])).unwrap();
        let (m, b2) = reduce_to_indecomposable(&rd, &b, &ivec(&[1, 1, 0, 0])).unwrap();
        assert_eq!(m, LeviSubset::from_indices(&[0, 2]));
        // within the block Levi the pair is central
        let r = hn_classify(&rd, &b2, &ivec(&[1, 1, 0, 0])).unwrap();
        assert_eq!(r.hn_class, HNClass::IndecomposableCentral);
    }

    #[test]
    fn classify_requires_membership() {
        let rd = p("GL", &[("n", 2)]);
        let b = BRep::translation(&rd, ivec(&[2, 0])).unwrap();
        assert!(matches!(hn_classify(&rd, &b, &ivec(&[1, 0])), Err(Error::EmptyClass(_))));
    }

    #[test]
    fn split_mixed_product() {
        // GL2 x GL3 with irreducible data on the first factor and central
        // data on the second
        let rd = p("ProdGL", &[("a", 2), ("b", 3)]);
        assert_eq!(rd.n_simple(), 3);
        let b = BRep::new(&rd, ivec(&[1, 0, 1, 1, 1]), rd.weyl_simple(0), None).unwrap();
        let mu = ivec(&[1, 0, 1, 1, 1]);
        let r = hn_classify(&rd, &b, &mu).unwrap();
        assert_eq!(r.hn_class, HNClass::IndecomposableMixed);
        assert!(!r.verdict_irreducible);
        assert!(!r.verdict_positive_coeffs);
        let split = r.factor_split.unwrap();
        assert_eq!(split.irreducible, LeviSubset::from_indices(&[0]));
        assert_eq!(split.central, LeviSubset::from_indices(&[1, 2]));
    }

    #[test]
    fn equivalence_of_verdicts_small_presets() {
        // conditions (2) and (3) agree and (3) implies (1); when (3) fails
        // on an indecomposable pair over simple adjoint data, the class is
        // central
        let data = vec![
            p("GL", &[("n", 2)]),
            p("GL", &[("n", 3)]),
            p("GU", &[("n", 3)]),
            p("GSp", &[("n", 4)]),
            p("ResGL", &[("n", 2), ("d", 2)]),
        ];
        for rd in &data {
            let full = LeviSubset::full(rd.n_simple());
            let weyl = rd.weyl_group(&full);
            let mut mus: Vec<Vec<Int>> = Vec::new();
            for bits in 0u32..(1 << rd.rank.min(5)) {
                let mu: Vec<Int> =
                    (0..rd.rank).map(|i| Int::from(((bits >> i) & 1) as i64)).collect();
                if rd.is_dominant(&mu, &full) && rd.is_minuscule(&mu, &full) {
                    mus.push(mu);
                }
            }
            let mut checked = 0;
            for mu in &mus {
                for w in weyl.iter() {
                    let b = BRep::new(rd, mu.clone(), w.clone(), None).unwrap();
                    let Ok(r) = hn_classify(rd, &b, mu) else { continue };
                    checked += 1;
                    assert_eq!(
                        r.verdict_no_levi_bound, r.verdict_positive_coeffs,
                        "conditions (2) and (3) must agree on {}",
                        rd.name
                    );
                    if r.verdict_positive_coeffs {
                        assert!(r.verdict_irreducible, "(3) implies (1) on {}", rd.name);
                        assert_eq!(r.hn_class, HNClass::Irreducible);
                    }
                    assert_ne!(r.hn_class, HNClass::IndecomposableMixed);
                }
            }
            assert!(checked > 0, "no classifiable pairs on {}", rd.name);
        }
    }

    #[test]
    fn kappa_constant_on_equal_newton() {
        // representatives with the same Newton point in a Levi share kappa
        let rd = p("GL", &[("n", 3)]);
        let m = LeviSubset::from_indices(&[0]);
        let mut by_newton: Vec<(Vec<Rat>, CoinvClass)> = Vec::new();
        for a in -1..=1i64 {
            for c in -1..=1i64 {
                for d in -1..=1i64 {
                    for w in rd.weyl_group(&m).iter() {
                        let b = BRep::new(&rd, ivec(&[a, c, d]), w.clone(), None).unwrap();
                        let nu = isocrystal::newton_point(&rd, &b).unwrap();
                        let (nu_m, _) = rd.dominant_rep_rat(&nu.raw, &m);
                        let k = isocrystal::kottwitz_point(&rd, &b, &m).unwrap();
                        if let Some((_, prev)) = by_newton.iter().find(|(n, _)| *n == nu_m) {
                            assert_eq!(*prev, k, "kappa must be constant at fixed Newton point");
                        } else {
                            by_newton.push((nu_m, k));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn report_serializes() {
        let rd = p("GL", &[("n", 2)]);
        let b = BRep::new(&rd, ivec(&[1, 0]), rd.weyl_simple(0), None).unwrap();
        let r = hn_classify(&rd, &b, &ivec(&[1, 0])).unwrap();
        let js = serde_json::to_string(&r).unwrap();
        assert!(js.contains("\"hn_class\":\"irreducible\""));
        assert!(js.contains("\"verdict_irreducible\":true"));
    }
}
