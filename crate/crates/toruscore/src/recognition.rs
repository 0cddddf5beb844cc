//! Recognizing the core of a solid torus and, on top of that, the
//! Hopf link.
//!
//! The pipeline has two faces. [`verify_certificate`] is the
//! deterministic polynomial-time side: given a knot in a solid torus
//! and a two-surface certificate, it replays eleven checks and accepts
//! exactly when the certificate witnesses that the knot is the core.
//! [`decide_core`] is the exponential side: it searches the vertex
//! surfaces of the two exteriors for the certificate halves, so a
//! "yes" always comes with a certificate that re-verifies.
//!
//! Work limits keep the searches honest instead of fast: when a limit
//! cuts a candidate stream short, a negative answer is reported as
//! incomplete rather than silently treated as exhaustive.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::cone::vertex_surface_candidates_with;
use crate::exterior::{
    knot_exterior, knot_exterior_with, ExteriorError, SubdivisionPolicy,
};
use crate::handle::{glue_solid_torus, HandleError};
use crate::homology::{chain_complex, rotation_number, winding_map, HomologyError};
use crate::normal::curves::torus_h1_generators;
use crate::normal::essential::{is_essential_annulus, is_essential_disk};
use crate::normal::{
    is_admissible, matching_matrix, satisfies_matching, NormalError, NormalSurfaceVector,
};
use crate::surface::{boundary_components, SurfaceError};
use crate::triangulation::loops::KnotLoop;
use crate::triangulation::{Triangulation, ValidationError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecognitionError {
    #[error(transparent)]
    Invalid(#[from] ValidationError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Handle(#[from] HandleError),
    #[error(transparent)]
    Normal(#[from] NormalError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("the two loops share a vertex")]
    LoopsNotDisjoint,
}

/// Work limits for the exponential searches. `max_disks` caps the
/// cells any single surface may reconstruct into, `max_pairs` the ray
/// pairs one cone enumeration may combine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RecognitionBudget {
    pub max_disks: u64,
    pub max_pairs: u64,
}

impl Default for RecognitionBudget {
    fn default() -> Self {
        Self { max_disks: 1_000_000, max_pairs: 20_000_000 }
    }
}

/// The two normal surface vectors witnessing a core: an essential
/// annulus spanning the knot exterior and an essential disk in the
/// exterior taken after filling the solid torus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub annulus_vector: NormalSurfaceVector,
    pub disk_vector: NormalSurfaceVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepRecord {
    pub step: u8,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of a certificate verification: the trace records one entry
/// per executed step, ending at the first failure or at step 11.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub accepted: bool,
    pub trace: Vec<StepRecord>,
}

/// Outcome of the exponential decider.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub is_core: bool,
    pub certificate: Option<Certificate>,
    /// False when a work limit cut a candidate stream short, so a
    /// negative answer may be incomplete. A positive answer is always
    /// definitive.
    pub exhaustive: bool,
    pub annulus_candidates: usize,
    pub disk_candidates: usize,
}

impl Decision {
    fn no(exhaustive: bool, annulus_candidates: usize, disk_candidates: usize) -> Self {
        Self {
            is_core: false,
            certificate: None,
            exhaustive,
            annulus_candidates,
            disk_candidates,
        }
    }
}

/// Outcome of the Hopf link recognizer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfDecision {
    pub is_hopf: bool,
    /// As in [`Decision`]: a negative answer is definitive only when
    /// this holds.
    pub exhaustive: bool,
    /// The core decision for the second component, when the first
    /// component passed the unknot test.
    pub core_decision: Option<Decision>,
}

impl HopfDecision {
    fn no(exhaustive: bool) -> Self {
        Self { is_hopf: false, exhaustive, core_decision: None }
    }
}

/// Largest value any certificate coordinate may take over `tets`
/// tetrahedra.
pub fn coordinate_bound(tets: usize) -> BigInt {
    assert!(tets > 0);
    BigInt::from(1) << (7 * tets - 1)
}

/// An essential curve on the boundary torus that is not nullhomologous
/// in the solid torus, taken from the two torus generators: the first
/// with nonzero winding wins. The loop lies in the boundary
/// 1-skeleton.
pub fn choose_alpha(tv: &Triangulation) -> Result<KnotLoop, RecognitionError> {
    let sk = tv.skeleton()?;
    let comps = boundary_components(tv, &sk)?;
    let [comp] = comps.as_slice() else {
        return Err(NormalError::NotATorus.into());
    };
    let (m, l) = torus_h1_generators(comp, &sk)?;
    let cc = chain_complex(tv, &sk);
    let w = winding_map(&cc)?;
    let alpha = if !w.winding(&sk, &m).is_zero() { m } else { l };
    assert!(
        !w.winding(&sk, &alpha).is_zero(),
        "generators of a boundary torus cannot both bound"
    );
    Ok(alpha)
}

/// Verifies a certificate with the default reconstruction budget.
pub fn verify_certificate(
    tv: &Triangulation,
    k: &KnotLoop,
    cert: &Certificate,
) -> Result<Verdict, RecognitionError> {
    verify_certificate_with(tv, k, cert, RecognitionBudget::default().max_disks)
}

/// Replays the eleven checks against the certificate. Semantic
/// failures reject with a trace; structural failures (and an exhausted
/// reconstruction budget) are errors, never a misleading rejection.
pub fn verify_certificate_with(
    tv: &Triangulation,
    k: &KnotLoop,
    cert: &Certificate,
    max_disks: u64,
) -> Result<Verdict, RecognitionError> {
    let mut trace = Vec::new();
    macro_rules! check {
        ($n:expr, $passed:expr, $($d:tt)*) => {{
            let passed = $passed;
            trace.push(StepRecord { step: $n, passed, detail: format!($($d)*) });
            if !passed {
                return Ok(Verdict { accepted: false, trace });
            }
        }};
    }

    let r = rotation_number(tv, k)?;
    check!(1, r.is_one(), "rotation number {r}");

    let ev = knot_exterior(tv, k)?;
    let n1 = ev.tri.size();
    check!(2, n1 > 0, "knot exterior has {n1} tetrahedra");

    let x = &cert.annulus_vector;
    let bound = coordinate_bound(n1);
    check!(
        3,
        x.tets() == n1 && x.coords().iter().all(|c| c <= &bound),
        "annulus vector fits {n1} tetrahedra within the coordinate bound"
    );
    check!(
        4,
        is_admissible(x) && satisfies_matching(&matching_matrix(&ev.tri), x),
        "annulus vector is a normal surface"
    );
    check!(5, is_essential_annulus(&ev, x, max_disks)?, "essential spanning annulus");

    let alpha = choose_alpha(tv)?;
    check!(6, true, "filling curve has {} edges", alpha.len());

    let (filled, km) = glue_solid_torus(tv, k, &alpha)?;
    check!(7, true, "filled manifold has {} tetrahedra", filled.size());

    let em = knot_exterior(&filled, &km)?;
    let n2 = em.tri.size();
    check!(8, n2 > 0, "glued exterior has {n2} tetrahedra");

    let y = &cert.disk_vector;
    let bound = coordinate_bound(n2);
    check!(
        9,
        y.tets() == n2 && y.coords().iter().all(|c| c <= &bound),
        "disk vector fits {n2} tetrahedra within the coordinate bound"
    );
    check!(
        10,
        is_admissible(y) && satisfies_matching(&matching_matrix(&em.tri), y),
        "disk vector is a normal surface"
    );
    check!(11, is_essential_disk(&em, y, max_disks)?, "essential disk");

    Ok(Verdict { accepted: true, trace })
}

/// Decides whether `k` is the core of the solid torus with the default
/// budget.
pub fn decide_core(tv: &Triangulation, k: &KnotLoop) -> Result<Decision, RecognitionError> {
    decide_core_with(tv, k, RecognitionBudget::default())
}

/// Searches vertex surfaces of the knot exterior for an essential
/// spanning annulus and, once one is found, vertex surfaces of the
/// filled exterior for an essential disk. The first passing pair in
/// enumeration order becomes the certificate. The filled exterior is
/// built once; it does not depend on which annulus passed.
pub fn decide_core_with(
    tv: &Triangulation,
    k: &KnotLoop,
    budget: RecognitionBudget,
) -> Result<Decision, RecognitionError> {
    if !rotation_number(tv, k)?.is_one() {
        return Ok(Decision::no(true, 0, 0));
    }

    let ev = knot_exterior(tv, k)?;
    let (candidates, skipped) =
        match vertex_surface_candidates_with(&ev.tri, budget.max_disks, budget.max_pairs) {
            Ok(pair) => pair,
            Err(NormalError::EnumerationBudget { .. }) => return Ok(Decision::no(false, 0, 0)),
            Err(e) => return Err(e.into()),
        };
    let mut annulus = None;
    for x in &candidates {
        if is_essential_annulus(&ev, x, budget.max_disks)? {
            annulus = Some(x.clone());
            break;
        }
    }
    let annulus_candidates = candidates.len();
    let annuli_complete = skipped.is_empty();
    let Some(annulus_vector) = annulus else {
        return Ok(Decision::no(annuli_complete, annulus_candidates, 0));
    };

    let alpha = choose_alpha(tv)?;
    let (filled, km) = glue_solid_torus(tv, k, &alpha)?;
    let em = knot_exterior(&filled, &km)?;
    let (candidates, skipped) =
        match vertex_surface_candidates_with(&em.tri, budget.max_disks, budget.max_pairs) {
            Ok(pair) => pair,
            Err(NormalError::EnumerationBudget { .. }) => {
                return Ok(Decision::no(false, annulus_candidates, 0));
            }
            Err(e) => return Err(e.into()),
        };
    for y in &candidates {
        if is_essential_disk(&em, y, budget.max_disks)? {
            return Ok(Decision {
                is_core: true,
                certificate: Some(Certificate {
                    annulus_vector,
                    disk_vector: y.clone(),
                }),
                exhaustive: true,
                annulus_candidates,
                disk_candidates: candidates.len(),
            });
        }
    }
    Ok(Decision::no(
        annuli_complete && skipped.is_empty(),
        annulus_candidates,
        candidates.len(),
    ))
}

/// Decides whether the two loops form a Hopf link with the default
/// budget.
pub fn recognize_hopf(
    t: &Triangulation,
    k1: &KnotLoop,
    k2: &KnotLoop,
) -> Result<HopfDecision, RecognitionError> {
    recognize_hopf_with(t, k1, k2, RecognitionBudget::default())
}

/// Two disjoint loops form the Hopf link exactly when the first is
/// unknotted and the second is the core of its exterior. The unknot
/// test looks for an essential disk among the vertex surfaces of the
/// first exterior; the second loop is carried through that exterior
/// construction and handed to the core decider.
pub fn recognize_hopf_with(
    t: &Triangulation,
    k1: &KnotLoop,
    k2: &KnotLoop,
    budget: RecognitionBudget,
) -> Result<HopfDecision, RecognitionError> {
    if k1.vertices().iter().any(|v| k2.vertices().contains(v)) {
        return Err(RecognitionError::LoopsNotDisjoint);
    }

    let (e1, carried) =
        knot_exterior_with(t, k1, std::slice::from_ref(k2), SubdivisionPolicy::Adaptive)?;
    let k2e = carried.into_iter().next().expect("one carried loop");

    let (candidates, skipped) =
        match vertex_surface_candidates_with(&e1.tri, budget.max_disks, budget.max_pairs) {
            Ok(pair) => pair,
            Err(NormalError::EnumerationBudget { .. }) => return Ok(HopfDecision::no(false)),
            Err(e) => return Err(e.into()),
        };
    let mut unknotted = false;
    for x in &candidates {
        if is_essential_disk(&e1, x, budget.max_disks)? {
            unknotted = true;
            break;
        }
    }
    if !unknotted {
        return Ok(HopfDecision::no(skipped.is_empty()));
    }

    let d = decide_core_with(&e1.tri, &k2e, budget)?;
    Ok(HopfDecision {
        is_hopf: d.is_core,
        exhaustive: d.is_core || d.exhaustive,
        core_decision: Some(d),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn fan_with_core() -> (Triangulation, KnotLoop) {
        let b = fixtures::solid_torus_fan(1);
        let sk = b.triangulation.skeleton().unwrap();
        let knot = KnotLoop::new(&sk, b.vertical_loop(&sk, 0)).unwrap();
        (b.triangulation, knot)
    }

    fn winding_two_loop(
        b: &fixtures::ProductBuild,
        sk: &crate::Skeleton,
    ) -> KnotLoop {
        // Two ascending diagonals and two horizontal edges: the loop
        // climbs twice per pass around the circle factor.
        let e = |a, bb| b.edge_between(sk, a, bb).unwrap();
        KnotLoop::new(
            sk,
            vec![
                e((1, 0), (2, 1)),
                e((2, 0), (5, 0)),
                e((5, 0), (6, 1)),
                e((6, 0), (1, 0)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn alpha_lies_on_the_boundary_and_winds() {
        let (tv, _) = fan_with_core();
        let sk = tv.skeleton().unwrap();
        let alpha = choose_alpha(&tv).unwrap();
        assert!(alpha.edges().iter().all(|&e| sk.edge_boundary[e]));
        let w = winding_map(&chain_complex(&tv, &sk)).unwrap();
        assert!(!w.winding(&sk, &alpha).is_zero());
    }

    #[test]
    fn zero_certificate_rejects_at_step_five() {
        let (tv, k) = fan_with_core();
        let ev = knot_exterior(&tv, &k).unwrap();
        let cert = Certificate {
            annulus_vector: NormalSurfaceVector::zeros(ev.tri.size()),
            disk_vector: NormalSurfaceVector::zeros(1),
        };
        let v = verify_certificate(&tv, &k, &cert).unwrap();
        assert!(!v.accepted);
        assert_eq!(v.trace.last().unwrap().step, 5);
        assert!(v.trace.iter().rev().skip(1).all(|s| s.passed));
    }

    #[test]
    fn wrong_dimension_rejects_at_step_three() {
        let (tv, k) = fan_with_core();
        let cert = Certificate {
            annulus_vector: NormalSurfaceVector::zeros(1),
            disk_vector: NormalSurfaceVector::zeros(1),
        };
        let v = verify_certificate(&tv, &k, &cert).unwrap();
        assert!(!v.accepted);
        let steps: Vec<u8> = v.trace.iter().map(|s| s.step).collect();
        assert_eq!(steps, vec![1, 2, 3]);
    }

    #[test]
    fn winding_two_rejects_at_step_one() {
        let b = fixtures::solid_torus_fan(1);
        let sk = b.triangulation.skeleton().unwrap();
        let k = winding_two_loop(&b, &sk);
        let cert = Certificate {
            annulus_vector: NormalSurfaceVector::zeros(1),
            disk_vector: NormalSurfaceVector::zeros(1),
        };
        let v = verify_certificate(&b.triangulation, &k, &cert).unwrap();
        assert!(!v.accepted);
        assert_eq!(v.trace.len(), 1);
        assert_eq!(v.trace[0].step, 1);

        let d = decide_core(&b.triangulation, &k).unwrap();
        assert!(!d.is_core);
        assert!(d.exhaustive);
        assert_eq!(d.annulus_candidates, 0);
    }

    #[test]
    fn tiny_budget_gives_an_incomplete_no_on_the_core() {
        let (tv, k) = fan_with_core();
        let budget = RecognitionBudget { max_disks: 1_000_000, max_pairs: 10_000 };
        let d = decide_core_with(&tv, &k, budget).unwrap();
        assert!(!d.is_core);
        assert!(!d.exhaustive);
    }

    #[test]
    fn hand_built_certificate_is_accepted() {
        let (tv, k, cert) = fixtures::fan_core_certificate();
        let v = verify_certificate(&tv, &k, &cert).unwrap();
        assert!(v.accepted);
        let steps: Vec<u8> = v.trace.iter().map(|s| s.step).collect();
        assert_eq!(steps, (1..=11).collect::<Vec<u8>>());
        assert!(v.trace.iter().all(|s| s.passed));
    }

    #[test]
    fn corrupting_the_disk_vector_rejects() {
        let (tv, k, cert) = fixtures::fan_core_certificate();
        let mut bad = cert.clone();
        // A stray triangle in one tetrahedron unbalances the arc
        // counts across its faces.
        bad.disk_vector.set_tri(0, 2, 5);
        let v = verify_certificate(&tv, &k, &bad).unwrap();
        assert!(!v.accepted);
        assert_eq!(v.trace.last().unwrap().step, 10);
    }

    #[test]
    fn shared_vertex_is_rejected() {
        let b = fixtures::solid_torus_fan(1);
        let sk = b.triangulation.skeleton().unwrap();
        let k1 = KnotLoop::new(&sk, b.vertical_loop(&sk, 0)).unwrap();
        let k2 = KnotLoop::new(&sk, b.vertical_loop(&sk, 0)).unwrap();
        assert!(matches!(
            recognize_hopf(&b.triangulation, &k1, &k2),
            Err(RecognitionError::LoopsNotDisjoint)
        ));
    }
}
