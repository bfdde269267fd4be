//! Connected-component descriptors for the affine Deligne-Lusztig set of a
//! dominant minuscule cocharacter and an isocrystal class.
//!
//! The pipeline reduces the pair to its minimal Levi home, classifies it
//! there, and emits one of four descriptor shapes:
//!
//! * `empty` when the class lies outside the bounded set;
//! * `coset` when the pair is irreducible: the component set is a coset of
//!   the Galois-invariants inside the fundamental-group quotient of the
//!   reduction Levi, pinned by the twisted boundary equation;
//! * `discrete` when the class is the central translation by mu: the
//!   component set is the full arithmetic quotient `H(F)/H(O_F)`;
//! * `product` when the reduction Levi splits over the Galois action into
//!   irreducible and central factors: per-factor descriptors are computed on
//!   the adjoint quotients of the factors and listed side by side.
//!
//! `ad_transfer` recovers the descriptor of the group from the descriptor of
//! its adjoint quotient through the fiber-product square over the two
//! fundamental-group cosets; the fiber direction is checked against the
//! Galois-invariant central cocharacters.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hnstrat::{self, HNClass};
use crate::isocrystal::BRep;
use crate::linalg::{self, IMat};
use crate::pi1lat::{self, CosetDescriptor, Pi1Group};
use crate::rootdata::{LeviSubset, RootDatum};
use crate::Int;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pi0Variant {
    Empty,
    Coset,
    Discrete,
    Product,
}

/// Names the arithmetic quotient `H(F)/H(O_F)` underlying a discrete
/// component set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupMarker {
    pub datum: String,
    pub levi: Vec<usize>,
    pub display: String,
}

impl GroupMarker {
    fn new(rd: &RootDatum, m: &LeviSubset) -> GroupMarker {
        let full = LeviSubset::full(rd.n_simple());
        let base = if *m == full {
            rd.name.clone()
        } else {
            format!("{}[L={:?}]", rd.name, m.indices())
        };
        GroupMarker {
            datum: rd.name.clone(),
            levi: m.indices(),
            display: format!("{base}(F)/{base}(O_F)"),
        }
    }
}

/// One Galois-simple factor of a product descriptor, tagged with the simple
/// indices it occupies in the ambient datum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorDescriptor {
    pub indices: Vec<usize>,
    pub descriptor: Pi0Descriptor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pi0Descriptor {
    pub variant: Pi0Variant,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coset: Option<CosetDescriptor>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupMarker>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<FactorDescriptor>>,
    pub provenance: Vec<String>,
    pub reduction_levi: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl Pi0Descriptor {
    fn empty(rd: &RootDatum, reason: String) -> Pi0Descriptor {
        Pi0Descriptor {
            variant: Pi0Variant::Empty,
            coset: None,
            group: None,
            factors: None,
            provenance: vec!["empty-class".into()],
            reduction_levi: LeviSubset::full(rd.n_simple()).indices(),
            reason: Some(reason),
        }
    }
}

/// Adjoint quotient of the sub-datum spanned by a sigma-stable set of simple
/// indices, together with the pushforward of cocharacters.
pub struct AdSubDatum {
    pub datum: RootDatum,
    /// Simple indices of the ambient datum, sorted.
    pub indices: Vec<usize>,
    /// Pushforward matrix on cocharacters: row i is the pairing row of
    /// simple root `indices[i]`.
    pub push: IMat,
}

fn perm_mat(perm: &[usize]) -> IMat {
    let n = perm.len();
    let mut m = IMat::zero(n, n);
    for (j, &pj) in perm.iter().enumerate() {
        m.set(pj, j, Int::from(1));
    }
    m
}

/// Build the adjoint quotient datum on the given simple indices. The target
/// cocharacter lattice has the pairings with those simple roots as
/// coordinates, so its simple coroots are the columns of the Cartan
/// submatrix and the pairing matrix is the identity.
pub fn adjoint_sub_datum(rd: &RootDatum, indices: &[usize]) -> Result<AdSubDatum> {
    let mut idx: Vec<usize> = indices.to_vec();
    idx.sort_unstable();
    idx.dedup();
    if idx.len() != indices.len() {
        return Err(Error::Precondition("adjoint sub-datum indices must be distinct".into()));
    }
    if idx.is_empty() {
        return Err(Error::Precondition(
            "adjoint sub-datum needs at least one simple index".into(),
        ));
    }
    if idx.iter().any(|&i| i >= rd.n_simple()) {
        return Err(Error::Precondition("simple index out of range".into()));
    }
    for &i in &idx {
        if !idx.contains(&rd.simple_perm[i]) {
            return Err(Error::Precondition(
                "adjoint sub-datum indices must be sigma-stable".into(),
            ));
        }
    }
    let k = idx.len();
    let suffix = if idx.len() == rd.n_simple() {
        String::new()
    } else {
        let parts: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
        format!("[{}]", parts.join(","))
    };
    let name = format!("{}-ad{}", rd.name, suffix);
    let cartan = |i: usize, j: usize| rd.pairing(&rd.simple_ch[idx[i]], &rd.simple_cov[idx[j]]);
    let ch: Vec<Vec<Int>> = (0..k)
        .map(|i| (0..k).map(|j| if i == j { Int::from(1) } else { Int::from(0) }).collect())
        .collect();
    let cov: Vec<Vec<Int>> = (0..k).map(|j| (0..k).map(|i| cartan(i, j)).collect()).collect();
    let perm: Vec<usize> = idx
        .iter()
        .map(|&i| idx.iter().position(|&x| x == rd.simple_perm[i]).unwrap())
        .collect();
    let datum = RootDatum::build(name, ch, cov, IMat::identity(k), perm_mat(&perm))?;
    // the sub-datum must carry exactly the roots supported on the indices
    let expected = rd.levi_root_ids(&LeviSubset::from_indices(&idx)).len();
    if datum.n_roots() != expected {
        return Err(Error::Internal("adjoint sub-datum root count mismatch".into()));
    }
    let push_rows: Vec<Vec<Int>> = idx.iter().map(|&i| rd.simple_ch[i].clone()).collect();
    let push = IMat::from_rows(push_rows).mul(&rd.pairing_mat);
    Ok(AdSubDatum { datum, indices: idx, push })
}

/// Adjoint quotient on all simple indices.
pub fn adjoint_quotient(rd: &RootDatum) -> Result<AdSubDatum> {
    let all: Vec<usize> = (0..rd.n_simple()).collect();
    adjoint_sub_datum(rd, &all)
}

impl AdSubDatum {
    pub fn push_cochar(&self, v: &[Int]) -> Vec<Int> {
        self.push.mul_vec(v)
    }

    /// Push a class representative down to the sub-datum. Letters of the
    /// Weyl word outside the index set must be orthogonal to it, so that the
    /// dropped reflections act trivially on the pushed coordinates.
    pub fn push_brep(&self, rd: &RootDatum, b: &BRep) -> Result<BRep> {
        let mut word = Vec::new();
        for &s in &b.w.word {
            if let Some(pos) = self.indices.iter().position(|&i| i == s) {
                word.push(pos);
            } else {
                for &i in &self.indices {
                    if rd.pairing(&rd.simple_ch[i], &rd.simple_cov[s]) != Int::from(0) {
                        return Err(Error::Precondition(
                            "Weyl word letter outside the sub-datum is not orthogonal to it"
                                .into(),
                        ));
                    }
                }
            }
        }
        let w = self.datum.weyl_from_word(&word)?;
        BRep::new(&self.datum, self.push_cochar(&b.lambda), w, None)
    }
}

/// Basis of the Galois-invariant central cocharacters of the Levi: kernel of
/// the pairing rows of its simple roots stacked over (sigma - 1).
pub fn central_invariant_cochars(rd: &RootDatum, m: &LeviSubset) -> Vec<Vec<Int>> {
    let mut rows: Vec<Vec<Int>> = Vec::new();
    for i in m.indices() {
        let row = IMat::from_rows(vec![rd.simple_ch[i].clone()]).mul(&rd.pairing_mat);
        rows.push(row.row_vec(0));
    }
    let diff = rd.sigma.sub(&IMat::identity(rd.rank));
    for i in 0..rd.rank {
        rows.push(diff.row_vec(i));
    }
    linalg::kernel_basis(&IMat::from_rows(rows))
}

/// Galois-simple factors of a Levi: connected components of its Dynkin
/// diagram, merged along the sigma action, sorted by smallest index.
pub fn galois_factors(rd: &RootDatum, m: &LeviSubset) -> Vec<Vec<usize>> {
    let idx = m.indices();
    let mut repr: Vec<usize> = (0..idx.len()).collect();
    fn find(repr: &mut Vec<usize>, i: usize) -> usize {
        if repr[i] != i {
            let r = find(repr, repr[i]);
            repr[i] = r;
        }
        repr[i]
    }
    let unite = |repr: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(repr, a), find(repr, b));
        if ra != rb {
            repr[ra.max(rb)] = ra.min(rb);
        }
    };
    for (a, &i) in idx.iter().enumerate() {
        for (b, &j) in idx.iter().enumerate().skip(a + 1) {
            if rd.pairing(&rd.simple_ch[i], &rd.simple_cov[j]) != Int::from(0) {
                unite(&mut repr, a, b);
            }
        }
        let im = rd.simple_perm[i];
        if let Some(b) = idx.iter().position(|&j| j == im) {
            unite(&mut repr, a, b);
        }
    }
    let mut buckets: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for a in 0..idx.len() {
        let r = find(&mut repr, a);
        buckets.entry(r).or_default().push(idx[a]);
    }
    buckets.into_values().collect()
}

fn preamble(rd: &RootDatum, mu: &[Int], b: &BRep) -> Result<(BRep, hnstrat::BGMuCertificate)> {
    if mu.len() != rd.rank {
        return Err(Error::Precondition("mu has the wrong rank".into()));
    }
    let full = LeviSubset::full(rd.n_simple());
    if !rd.is_dominant(mu, &full) {
        return Err(Error::Precondition("mu must be dominant".into()));
    }
    if !rd.is_minuscule(mu, &full) {
        return Err(Error::NotMinuscule(format!("{mu:?}")));
    }
    let b_g = BRep::new(rd, b.lambda.clone(), b.w.clone(), None)?;
    let cert = hnstrat::in_b_g_mu(rd, &b_g, mu, &full)?;
    Ok((b_g, cert))
}

/// Component descriptor of the bounded affine Deligne-Lusztig set attached
/// to dominant minuscule `mu` and the class of `b` (taken in the full
/// group, whatever Levi `b` is homed in).
pub fn pi0_compute(rd: &RootDatum, mu: &[Int], b: &BRep) -> Result<Pi0Descriptor> {
    let (b_g, cert) = preamble(rd, mu, b)?;
    if !cert.member {
        return Ok(Pi0Descriptor::empty(rd, cert.reason));
    }
    let (m_red, b_red) = hnstrat::reduce_to_indecomposable(rd, &b_g, mu)?;
    assemble(rd, mu, &b_g, &m_red, &b_red)
}

/// Build the descriptor of an indecomposable pair homed in its reduction
/// Levi. Shared by the direct pipeline and the adjoint transfer so the two
/// routes produce literally identical descriptors when their cross-checks
/// pass.
fn assemble(
    rd: &RootDatum,
    mu: &[Int],
    b_g: &BRep,
    m_red: &LeviSubset,
    b_red: &BRep,
) -> Result<Pi0Descriptor> {
    let full = LeviSubset::full(rd.n_simple());
    let proper = *m_red != full;
    let report = hnstrat::hn_classify(rd, b_red, mu)?;
    let mut provenance: Vec<String> = Vec::new();
    if proper {
        provenance.push("levi-reduction".into());
    }
    match report.hn_class {
        HNClass::Irreducible => {
            let pm = Pi1Group::new(rd, m_red);
            let coset = pi1lat::solve_twisted_boundary(rd, &pm, &b_red.lambda, mu)?;
            if proper {
                ambient_containment(rd, m_red, &coset, &b_g.lambda, mu)?;
            }
            provenance.push("irreducible-coset".into());
            Ok(Pi0Descriptor {
                variant: Pi0Variant::Coset,
                coset: Some(coset),
                group: None,
                factors: None,
                provenance,
                reduction_levi: m_red.indices(),
                reason: None,
            })
        }
        HNClass::IndecomposableCentral => {
            provenance.push("central-discrete".into());
            Ok(Pi0Descriptor {
                variant: Pi0Variant::Discrete,
                coset: None,
                group: Some(GroupMarker::new(rd, m_red)),
                factors: None,
                provenance,
                reduction_levi: m_red.indices(),
                reason: None,
            })
        }
        HNClass::IndecomposableMixed => {
            let split = match report.factor_split {
                Some(s) => s,
                None => {
                    return Err(Error::Internal("mixed class without a factor split".into()));
                }
            };
            let pm = Pi1Group::new(rd, m_red);
            let coset = pi1lat::solve_twisted_boundary(rd, &pm, &b_red.lambda, mu)?;
            if proper {
                ambient_containment(rd, m_red, &coset, &b_g.lambda, mu)?;
            }
            let mut factors = Vec::new();
            for f in galois_factors(rd, m_red) {
                let sub = adjoint_sub_datum(rd, &f)?;
                let mu_f = sub.push_cochar(mu);
                let b_f = sub.push_brep(rd, b_red)?;
                let d_f = pi0_compute(&sub.datum, &mu_f, &b_f)?;
                let in_irr = f.iter().all(|&i| split.irreducible.contains(i));
                let in_cen = f.iter().all(|&i| split.central.contains(i));
                let ok = match d_f.variant {
                    Pi0Variant::Coset => in_irr,
                    Pi0Variant::Discrete => in_cen,
                    _ => false,
                };
                if !ok {
                    return Err(Error::Internal(format!(
                        "factor {f:?} disagrees with the irreducible/central split"
                    )));
                }
                factors.push(FactorDescriptor { indices: f, descriptor: d_f });
            }
            provenance.push("product-split".into());
            provenance.push("central-quotient-transfer".into());
            Ok(Pi0Descriptor {
                variant: Pi0Variant::Product,
                coset: Some(coset),
                group: None,
                factors: Some(factors),
                provenance,
                reduction_levi: m_red.indices(),
                reason: None,
            })
        }
        HNClass::Decomposable => {
            Err(Error::Internal("reduction returned a decomposable pair".into()))
        }
    }
}

/// Check that the image of the reduced coset under the Levi transition lands
/// inside the twisted-boundary coset of the full group, solved independently
/// from the original representative.
fn ambient_containment(
    rd: &RootDatum,
    m_red: &LeviSubset,
    coset: &CosetDescriptor,
    lambda_g: &[Int],
    mu: &[Int],
) -> Result<()> {
    let full = LeviSubset::full(rd.n_simple());
    let pg = Pi1Group::new(rd, &full);
    let g_coset = pi1lat::solve_twisted_boundary(rd, &pg, lambda_g, mu)?;
    let trans = pi1lat::levi_transition(rd, m_red, &full)?;
    let mut lat = g_coset.generators.clone();
    lat.extend(pg.pres.zero_lattice());
    let canon = linalg::lattice_canon(&lat, pg.pres.dim());
    let base_diff = sub_vec(&trans.map.mul_vec(&coset.base), &g_coset.base);
    if !linalg::lattice_contains(&canon, &base_diff) {
        return Err(Error::Internal(
            "reduced coset base escapes the ambient twisted-boundary coset".into(),
        ));
    }
    for g in &coset.generators {
        if !linalg::lattice_contains(&canon, &trans.map.mul_vec(g)) {
            return Err(Error::Internal(
                "reduced coset lattice escapes the ambient twisted-boundary coset".into(),
            ));
        }
    }
    Ok(())
}

fn sub_vec(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Extra data reported by the adjoint transfer: the fiber direction of the
/// coset map and the central cocharacters it must match, plus both cosets
/// mapped into the full adjoint quotient.
#[derive(Clone, Debug, Serialize)]
pub struct AdTransferOutcome {
    pub descriptor: Pi0Descriptor,
    /// Lattice basis of the fiber of pi1(M)^Gamma -> pi1(ad)^Gamma, in
    /// reduced pi1(M) coordinates.
    #[serde(with = "crate::serial::ivecvec")]
    pub fiber_basis: Vec<Vec<Int>>,
    /// Image of the Galois-invariant central cocharacters in the same
    /// coordinates; equals the fiber basis up to the zero lattice.
    #[serde(with = "crate::serial::ivecvec")]
    pub center_image: Vec<Vec<Int>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ad_coset: Option<CosetDescriptor>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub image_coset: Option<CosetDescriptor>,
}

/// Recover the descriptor of the group from the descriptor computed on the
/// adjoint quotient of its reduction Levi. The square over the two
/// fundamental-group cosets is Cartesian: the variant must agree, the image
/// of the group coset must land inside the adjoint coset, and the kernel of
/// the invariant map must be spanned by the Galois-invariant central
/// cocharacters. The returned descriptor is assembled from group-side data,
/// so agreement with `pi0_compute` is exactly the consistency of the two
/// routes.
pub fn ad_transfer(
    rd: &RootDatum,
    mu: &[Int],
    b: &BRep,
    ad: &AdSubDatum,
    ad_desc: &Pi0Descriptor,
) -> Result<AdTransferOutcome> {
    let (b_g, cert) = preamble(rd, mu, b)?;
    if !cert.member {
        return Ok(AdTransferOutcome {
            descriptor: Pi0Descriptor::empty(rd, cert.reason),
            fiber_basis: Vec::new(),
            center_image: Vec::new(),
            ad_coset: None,
            image_coset: None,
        });
    }
    let (m_red, b_red) = hnstrat::reduce_to_indecomposable(rd, &b_g, mu)?;
    if ad.indices != m_red.indices() {
        return Err(Error::Precondition(format!(
            "adjoint datum covers {:?} but the reduction Levi is {:?}",
            ad.indices,
            m_red.indices()
        )));
    }
    let descriptor = assemble(rd, mu, &b_g, &m_red, &b_red)?;
    let expected = match descriptor.variant {
        Pi0Variant::Coset => Pi0Variant::Coset,
        Pi0Variant::Discrete => Pi0Variant::Discrete,
        Pi0Variant::Product => Pi0Variant::Product,
        Pi0Variant::Empty => {
            return Err(Error::Internal("membership certificate contradicts assembly".into()));
        }
    };
    if ad_desc.variant != expected {
        return Err(Error::Internal(format!(
            "adjoint route classified {:?} but the group side is {:?}",
            ad_desc.variant, expected
        )));
    }
    if let (Some(fg), Some(fa)) = (&descriptor.factors, &ad_desc.factors) {
        if fg.len() != fa.len() {
            return Err(Error::Internal("adjoint route split into a different factor count".into()));
        }
        for (a, g) in fa.iter().zip(fg) {
            if a.descriptor.variant != g.descriptor.variant {
                return Err(Error::Internal("adjoint route factor variants disagree".into()));
            }
        }
    }

    let pm = Pi1Group::new(rd, &m_red);
    let full_a = LeviSubset::full(ad.datum.n_simple());
    let pa = Pi1Group::new(&ad.datum, &full_a);
    // pi1(M) -> pi1(ad) in reduced coordinates
    let map_ga = pa.pres.proj.mul(&ad.push).mul(&pm.pres.lift);

    // fiber of the invariant map: invariant combinations sent into the zero
    // lattice of the adjoint side
    let inv_m = pm.invariants()?;
    let zero_a = pa.pres.zero_lattice();
    let mut cols: Vec<Vec<Int>> = Vec::new();
    for v in &inv_m {
        cols.push(map_ga.mul_vec(v));
    }
    for z in &zero_a {
        cols.push(z.iter().map(|x| -x).collect());
    }
    let combo = if cols.is_empty() {
        Vec::new()
    } else {
        linalg::kernel_basis(&IMat::from_cols(cols))
    };
    let mut fiber: Vec<Vec<Int>> = Vec::new();
    for c in &combo {
        let mut v = vec![Int::from(0); pm.pres.dim()];
        for (ci, bv) in c.iter().take(inv_m.len()).zip(&inv_m) {
            for (vj, bj) in v.iter_mut().zip(bv) {
                *vj += ci * bj;
            }
        }
        fiber.push(v);
    }
    fiber.extend(pm.pres.zero_lattice());
    let fiber_basis = linalg::lattice_canon(&fiber, pm.pres.dim());

    let center: Vec<Vec<Int>> = central_invariant_cochars(rd, &m_red)
        .iter()
        .map(|v| pm.project(v))
        .collect();
    let center_image = linalg::lattice_canon(&center, pm.pres.dim());
    let mut center_full = center;
    center_full.extend(pm.pres.zero_lattice());
    let center_canon = linalg::lattice_canon(&center_full, pm.pres.dim());
    if fiber_basis != center_canon {
        return Err(Error::Internal(
            "fiber of the adjoint transfer is not the central invariant lattice".into(),
        ));
    }

    // coset comparison inside the full adjoint quotient
    let (ad_coset, image_coset) = match (&ad_desc.coset, &descriptor.coset) {
        (Some(ca), Some(cg)) => {
            let ad_red = LeviSubset::from_indices(&ad_desc.reduction_levi);
            let ta = pi1lat::levi_transition(&ad.datum, &ad_red, &full_a)?;
            if !ta.inv_surjective {
                return Err(Error::Internal(
                    "invariants fail to surject onto the adjoint quotient".into(),
                ));
            }
            let mut gens_a: Vec<Vec<Int>> =
                ca.generators.iter().map(|g| ta.map.mul_vec(g)).collect();
            gens_a.extend(pa.invariants()?);
            let ad_full =
                CosetDescriptor::new(pa.space.clone(), &ta.map.mul_vec(&ca.base), &gens_a, &pa.pres);
            let gens_img: Vec<Vec<Int>> =
                cg.generators.iter().map(|g| map_ga.mul_vec(g)).collect();
            let image = CosetDescriptor::new(
                pa.space.clone(),
                &map_ga.mul_vec(&cg.base),
                &gens_img,
                &pa.pres,
            );
            let mut lat = ad_full.generators.clone();
            lat.extend(pa.pres.zero_lattice());
            let canon = linalg::lattice_canon(&lat, pa.pres.dim());
            if !linalg::lattice_contains(&canon, &sub_vec(&image.base, &ad_full.base)) {
                return Err(Error::Internal(
                    "group coset image misses the adjoint coset".into(),
                ));
            }
            for g in &image.generators {
                if !linalg::lattice_contains(&canon, g) {
                    return Err(Error::Internal(
                        "group coset lattice escapes the adjoint coset".into(),
                    ));
                }
            }
            (Some(ad_full), Some(image))
        }
        (None, None) => (None, None),
        _ => {
            return Err(Error::Internal(
                "exactly one route produced a coset".into(),
            ));
        }
    };

    Ok(AdTransferOutcome { descriptor, fiber_basis, center_image, ad_coset, image_coset })
}

/// Run the full adjoint route: push the pair to the adjoint quotient of its
/// reduction Levi, compute the descriptor there, and transfer it back.
pub fn pi0_via_adjoint(rd: &RootDatum, mu: &[Int], b: &BRep) -> Result<Pi0Descriptor> {
    let (b_g, cert) = preamble(rd, mu, b)?;
    if !cert.member {
        return Ok(Pi0Descriptor::empty(rd, cert.reason));
    }
    let (m_red, b_red) = hnstrat::reduce_to_indecomposable(rd, &b_g, mu)?;
    let ad = adjoint_sub_datum(rd, &m_red.indices())?;
    let mu_a = ad.push_cochar(mu);
    let b_a = ad.push_brep(rd, &b_red)?;
    let ad_desc = pi0_compute(&ad.datum, &mu_a, &b_a)?;
    Ok(ad_transfer(rd, mu, b, &ad, &ad_desc)?.descriptor)
}

/// Recompute the ambient-coset image over every element of the indexing set
/// of the Levi and check that it does not depend on the base point. Returns
/// the common image coset in the full group.
pub fn coset_base_point_check(
    rd: &RootDatum,
    m: &LeviSubset,
    mu: &[Int],
    b: &BRep,
) -> Result<CosetDescriptor> {
    let iset = crate::connect::iset_enumerate(rd, mu, b, m)?;
    if iset.elements.is_empty() {
        return Err(Error::Precondition("the indexing set is empty".into()));
    }
    let full = LeviSubset::full(rd.n_simple());
    let pm = Pi1Group::new(rd, m);
    let pg = Pi1Group::new(rd, &full);
    let trans = pi1lat::levi_transition(rd, m, &full)?;
    let mut common: Option<CosetDescriptor> = None;
    for el in &iset.elements {
        let cm = pi1lat::solve_twisted_boundary(rd, &pm, &b.lambda, &el.mu_x)?;
        let gens: Vec<Vec<Int>> = cm.generators.iter().map(|g| trans.map.mul_vec(g)).collect();
        let img =
            CosetDescriptor::new(pg.space.clone(), &trans.map.mul_vec(&cm.base), &gens, &pg.pres);
        match &common {
            None => common = Some(img),
            Some(c) => {
                if *c != img {
                    return Err(Error::Internal(format!(
                        "coset image depends on the base point at x = {:?}",
                        el.x
                    )));
                }
            }
        }
    }
    Ok(common.unwrap())
}
