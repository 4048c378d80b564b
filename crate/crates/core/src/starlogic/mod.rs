//! Non-commutative star product on membership functions and the quantum
//! logic of star-idempotent fuzzy events.
//!
//! The closed form (mu_A * mu_B)(p) = tr(T_A T_B p) is the primary evaluation
//! path; the geometric three-term form (pointwise product, Poisson bracket,
//! metric term) is computed on demand and must agree at every probe point.
//! Meets and joins of compatible pairs come from the star formulas; lattice
//! operations of incompatible pairs fall back to the kernel construction of
//! the projector lattice and are flagged as such.

mod harness;
mod poset;

pub use harness::{
    functional_logic_check, indicator_family, star_logic_harness, tabulate_events,
    tabulation_universe, BooleanSublatticeReport, FunctionalLogicReport, HarnessReport,
    SampledFunction, StarRule,
};
pub use poset::{FinitePoset, PosetAxiomReport};

use crate::error::{Error, Result};
use crate::fuzzy::MembershipFunction;
use crate::geometry::{fubini_study_metric, poisson_bracket, TangentVector};
use crate::linalg::{self, cr, max_entry_diff, spectral_norm, trace_product, CMatrix, C64};
use crate::measure::moment2_exact;
use crate::operators::{
    lattice_join, lattice_meet, projector_leq, DensityMatrix, HermitianOperator, Projector,
    ProjectivePoint,
};
use crate::tol::Tolerances;
use rand::Rng;

/// Fuzzy event with an operator-generated membership, tagged with whether
/// its generator is a projector (equivalently, whether it is
/// star-idempotent).
#[derive(Debug, Clone)]
pub struct FuzzyEventQL {
    membership: MembershipFunction,
    generator: HermitianOperator,
    projector_flag: bool,
}

impl FuzzyEventQL {
    /// Build from an effect operator 0 <= T <= I.
    pub fn from_effect(t: HermitianOperator, tol: &Tolerances) -> Result<Self> {
        let membership = MembershipFunction::from_operator(t.clone(), tol)?;
        let idem = spectral_norm(&(t.matrix() * t.matrix() - t.matrix()));
        Ok(Self {
            membership,
            generator: t,
            projector_flag: idem < tol.op_cert,
        })
    }

    pub fn from_projector(p: &Projector) -> Self {
        let t = p.operator().clone();
        let membership = MembershipFunction::from_operator(t.clone(), &Tolerances::default())
            .expect("projector is an effect");
        Self {
            membership,
            generator: t,
            projector_flag: true,
        }
    }

    pub fn empty(dim: usize) -> Self {
        Self::from_projector(&Projector::zero(dim))
    }

    pub fn universe(dim: usize) -> Self {
        Self::from_projector(&Projector::identity(dim))
    }

    pub fn dim(&self) -> usize {
        self.generator.dim()
    }

    pub fn membership(&self) -> &MembershipFunction {
        &self.membership
    }

    pub fn generator(&self) -> &HermitianOperator {
        &self.generator
    }

    pub fn is_projector(&self) -> bool {
        self.projector_flag
    }

    pub fn eval(&self, p: &ProjectivePoint) -> f64 {
        self.membership.eval(p)
    }

    pub fn complement(&self) -> Self {
        let dim = self.dim();
        let mat = CMatrix::identity(dim, dim) - self.generator.matrix();
        let t = HermitianOperator::new(mat, &Tolerances::default())
            .expect("I - T stays Hermitian");
        let idem_flag = self.projector_flag;
        Self {
            membership: MembershipFunction::from_operator(t.clone(), &Tolerances::default())
                .expect("I - T stays an effect"),
            generator: t,
            projector_flag: idem_flag,
        }
    }
}

/// The order isomorphism between projectors and fuzzy events: h(T) has
/// membership tr(T .).
pub fn order_iso_h(p: &Projector) -> FuzzyEventQL {
    FuzzyEventQL::from_projector(p)
}

/// Inverse of [`order_iso_h`]; exact because the generator is stored.
pub fn order_iso_h_inv(event: &FuzzyEventQL, tol: &Tolerances) -> Result<Projector> {
    Projector::new(event.generator().clone(), tol)
}

/// Probe points for star-product identities: Haar samples plus the
/// eigenvector points of every involved generator (the extremal cases).
#[derive(Debug, Clone)]
pub struct ProbeSet {
    points: Vec<ProjectivePoint>,
}

impl ProbeSet {
    pub fn build<R: Rng + ?Sized>(
        dim: usize,
        generators: &[&HermitianOperator],
        n_haar: usize,
        rng: &mut R,
    ) -> Self {
        let mut points: Vec<ProjectivePoint> = (0..n_haar)
            .map(|_| ProjectivePoint::haar(dim, rng))
            .collect();
        for g in generators {
            points.extend(g.eigenpoints());
        }
        Self { points }
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Closed form of the star product at a point: tr(A B p). The identity with
/// the geometric form holds for arbitrary Hermitian generators, not only
/// effects.
pub fn star_value_ops(a: &HermitianOperator, b: &HermitianOperator, p: &ProjectivePoint) -> C64 {
    let prod = a.matrix() * b.matrix();
    trace_product(&prod, p.matrix())
}

/// Geometric three-term form for arbitrary Hermitian generators:
/// f_A f_B + (i/2) {f_A, f_B} + (1/2) g(X_A, X_B).
pub fn star_geometric_ops(
    a: &HermitianOperator,
    b: &HermitianOperator,
    p: &ProjectivePoint,
    tol: &Tolerances,
) -> Result<C64> {
    let pointwise = a.expectation(p) * b.expectation(p);
    let bracket = poisson_bracket(a, b, p, tol)?;
    let xa = TangentVector::from_generator(p, a)?;
    let xb = TangentVector::from_generator(p, b)?;
    let metric = fubini_study_metric(&xa, &xb, tol)?;
    Ok(C64::new(pointwise + 0.5 * metric, 0.5 * bracket))
}

/// Closed form of the star product at a point: tr(T_A T_B p).
pub fn star_value(a: &FuzzyEventQL, b: &FuzzyEventQL, p: &ProjectivePoint) -> C64 {
    star_value_ops(a.generator(), b.generator(), p)
}

/// Geometric three-term form of the star product:
/// mu_A mu_B + (i/2) {mu_A, mu_B} + (1/2) g(X_A, X_B).
pub fn star_geometric(
    a: &FuzzyEventQL,
    b: &FuzzyEventQL,
    p: &ProjectivePoint,
    tol: &Tolerances,
) -> Result<C64> {
    star_geometric_ops(a.generator(), b.generator(), p, tol)
}

/// The star product of two events as a complex-valued field, cross-validated
/// against the geometric form on the probe set at construction.
#[derive(Debug, Clone)]
pub struct StarField {
    left: FuzzyEventQL,
    right: FuzzyEventQL,
    /// Largest closed-vs-geometric deviation seen at validation.
    pub cross_validation_defect: f64,
}

impl StarField {
    pub fn eval(&self, p: &ProjectivePoint) -> C64 {
        star_value(&self.left, &self.right, p)
    }

    pub fn eval_geometric(&self, p: &ProjectivePoint, tol: &Tolerances) -> Result<C64> {
        star_geometric(&self.left, &self.right, p, tol)
    }
}

/// Build the star product field, certifying closed form == geometric form at
/// every probe point.
pub fn star(
    a: &FuzzyEventQL,
    b: &FuzzyEventQL,
    probes: &ProbeSet,
    tol: &Tolerances,
) -> Result<StarField> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let mut worst = 0.0_f64;
    for p in probes.points() {
        let closed = star_value(a, b, p);
        let geometric = star_geometric(a, b, p, tol)?;
        worst = worst.max((closed - geometric).norm());
    }
    if worst > tol.probe {
        return Err(Error::CertificationFailure {
            context: "star closed form vs geometric form",
            deviation: worst,
            limit: tol.probe,
        });
    }
    Ok(StarField {
        left: a.clone(),
        right: b.clone(),
        cross_validation_defect: worst,
    })
}

/// Probe-based idempotence, certified against the operator check
/// ||T^2 - T|| < tol.op_cert. Disagreement between the two routes is an
/// error, not a value.
pub fn is_idempotent(a: &FuzzyEventQL, probes: &ProbeSet, tol: &Tolerances) -> Result<bool> {
    let t = a.generator().matrix();
    let t2 = t * t;
    let probe_dev = probes.points().iter().fold(0.0_f64, |acc, p| {
        let lhs = trace_product(&t2, p.matrix());
        let rhs = trace_product(t, p.matrix());
        acc.max((lhs - rhs).norm())
    });
    let by_probe = probe_dev < tol.probe;
    let op_dev = spectral_norm(&(t2 - t));
    let by_operator = op_dev < tol.op_cert;
    if by_probe != by_operator {
        return Err(Error::CertificationFailure {
            context: "idempotence probe vs operator check",
            deviation: probe_dev.max(op_dev),
            limit: tol.probe,
        });
    }
    Ok(by_probe)
}

fn require_idempotent(e: &FuzzyEventQL) -> Result<()> {
    if !e.is_projector() {
        let t = e.generator().matrix();
        return Err(Error::NotIdempotent {
            defect: spectral_norm(&(t * t - t)),
        });
    }
    Ok(())
}

/// Compatibility: the star products in both orders agree at every probe,
/// certified equivalent to commuting generators.
pub fn is_compatible(
    a: &FuzzyEventQL,
    b: &FuzzyEventQL,
    probes: &ProbeSet,
    tol: &Tolerances,
) -> Result<bool> {
    require_idempotent(a)?;
    require_idempotent(b)?;
    let probe_dev = probes.points().iter().fold(0.0_f64, |acc, p| {
        acc.max((star_value(a, b, p) - star_value(b, a, p)).norm())
    });
    let by_probe = probe_dev < tol.probe;
    let comm = linalg::commutator(a.generator().matrix(), b.generator().matrix());
    let op_dev = spectral_norm(&comm);
    let by_operator = op_dev < tol.op_cert;
    if by_probe != by_operator {
        return Err(Error::CertificationFailure {
            context: "compatibility probe vs commutator check",
            deviation: probe_dev.max(op_dev),
            limit: tol.probe,
        });
    }
    Ok(by_probe)
}

/// Orthogonality: the star product vanishes at every probe, certified
/// equivalent to a vanishing operator product.
pub fn is_orthogonal(
    a: &FuzzyEventQL,
    b: &FuzzyEventQL,
    probes: &ProbeSet,
    tol: &Tolerances,
) -> Result<bool> {
    require_idempotent(a)?;
    require_idempotent(b)?;
    let probe_dev = probes.points().iter().fold(0.0_f64, |acc, p| {
        acc.max(star_value(a, b, p).norm())
    });
    let by_probe = probe_dev < tol.probe;
    let op_dev = spectral_norm(&(a.generator().matrix() * b.generator().matrix()));
    let by_operator = op_dev < tol.op_cert;
    if by_probe != by_operator {
        return Err(Error::CertificationFailure {
            context: "orthogonality probe vs product check",
            deviation: probe_dev.max(op_dev),
            limit: tol.probe,
        });
    }
    Ok(by_probe)
}

/// Join and meet of a compatible pair through the star formulas.
#[derive(Debug, Clone)]
pub struct JoinMeet {
    pub join: FuzzyEventQL,
    pub meet: FuzzyEventQL,
}

/// mu_{P v Q} = mu_P + mu_Q - mu_P * mu_Q and mu_{P ^ Q} = mu_P * mu_Q,
/// valid for compatible pairs only; both results are certified projectors
/// and certified equal to the operator-lattice join/meet.
pub fn join_meet_membership(
    a: &FuzzyEventQL,
    b: &FuzzyEventQL,
    probes: &ProbeSet,
    tol: &Tolerances,
) -> Result<JoinMeet> {
    if !is_compatible(a, b, probes, tol)? {
        let comm = linalg::commutator(a.generator().matrix(), b.generator().matrix());
        return Err(Error::IncompatiblePair {
            commutator_norm: spectral_norm(&comm),
        });
    }
    let ta = a.generator().matrix();
    let tb = b.generator().matrix();
    // Commuting product is Hermitian; symmetrize away the rounding skew.
    let prod = (ta * tb + tb * ta).map(|z| z * cr(0.5));
    let meet_op = HermitianOperator::new(prod.clone(), tol).map_err(|_| {
        Error::CertificationFailure {
            context: "star meet generator hermiticity",
            deviation: linalg::hermiticity_defect(&prod),
            limit: tol.herm,
        }
    })?;
    let join_mat = ta + tb - &prod;
    let join_op = HermitianOperator::new(join_mat, tol)?;

    let meet_proj = Projector::new(meet_op.clone(), tol)?;
    let join_proj = Projector::new(join_op.clone(), tol)?;

    let pa = Projector::new(a.generator().clone(), tol)?;
    let pb = Projector::new(b.generator().clone(), tol)?;
    let lattice_m = lattice_meet(&pa, &pb, tol)?;
    let lattice_j = lattice_join(&pa, &pb, tol)?;
    let meet_dev = max_entry_diff(meet_proj.matrix(), lattice_m.matrix());
    let join_dev = max_entry_diff(join_proj.matrix(), lattice_j.matrix());
    if meet_dev > tol.probe || join_dev > tol.probe {
        return Err(Error::CertificationFailure {
            context: "star join/meet vs operator lattice",
            deviation: meet_dev.max(join_dev),
            limit: tol.probe,
        });
    }

    Ok(JoinMeet {
        join: FuzzyEventQL::from_projector(&join_proj),
        meet: FuzzyEventQL::from_projector(&meet_proj),
    })
}

/// How a lattice table entry was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticePath {
    /// Star formulas (compatible pair).
    Star,
    /// Kernel construction on the projector lattice (incompatible pair).
    OperatorLattice,
}

/// One meet/join table entry: the resulting projector, its index in the
/// element list when the result is a member, and the computation path.
#[derive(Debug, Clone)]
pub struct LatticeEntry {
    pub projector: Projector,
    pub index: Option<usize>,
    pub path: LatticePath,
}

/// Finite family of fuzzy events closed under complement with adjoined
/// bounds, together with its order/compatibility/orthogonality relations and
/// meet/join tables.
#[derive(Debug, Clone)]
pub struct QuantumLogicStructure {
    dim: usize,
    elements: Vec<FuzzyEventQL>,
    labels: Vec<String>,
    zero: usize,
    one: usize,
    order: Vec<Vec<bool>>,
    complement: Vec<usize>,
    compat: Vec<Vec<bool>>,
    orth: Vec<Vec<bool>>,
    meet: Vec<Vec<LatticeEntry>>,
    join: Vec<Vec<LatticeEntry>>,
    probes: ProbeSet,
}

/// Cap on the closed family size; the relation tables are quadratic.
pub const FAMILY_CAP: usize = 64;

impl QuantumLogicStructure {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[FuzzyEventQL] {
        &self.elements
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn zero_index(&self) -> usize {
        self.zero
    }

    pub fn one_index(&self) -> usize {
        self.one
    }

    pub fn order(&self) -> &[Vec<bool>] {
        &self.order
    }

    pub fn complement_map(&self) -> &[usize] {
        &self.complement
    }

    pub fn compat(&self) -> &[Vec<bool>] {
        &self.compat
    }

    pub fn orth(&self) -> &[Vec<bool>] {
        &self.orth
    }

    pub fn meet_entry(&self, i: usize, j: usize) -> &LatticeEntry {
        &self.meet[i][j]
    }

    pub fn join_entry(&self, i: usize, j: usize) -> &LatticeEntry {
        &self.join[i][j]
    }

    pub fn probes(&self) -> &ProbeSet {
        &self.probes
    }

    /// Index of an element whose generator matches `mat` within `tol`.
    pub fn find_by_matrix(&self, mat: &CMatrix, tol: f64) -> Option<usize> {
        self.elements
            .iter()
            .position(|e| max_entry_diff(e.generator().matrix(), mat) < tol)
    }

    /// View as a bare finite poset for the combinatorial axiom engine.
    pub fn as_poset(&self) -> FinitePoset {
        FinitePoset {
            labels: self.labels.clone(),
            leq: self.order.clone(),
            complement: self.complement.clone(),
            zero: self.zero,
            one: self.one,
        }
    }
}

/// Build the quantum logic generated by a projector family: adjoin the
/// bounds, close under complement, and fill every relation and lattice
/// table. Structure invariants (order axioms, involution, symmetry,
/// orth inside compat) are validated before returning.
pub fn build_logic<R: Rng + ?Sized>(
    family: &[Projector],
    n_haar_probes: usize,
    rng: &mut R,
    tol: &Tolerances,
) -> Result<QuantumLogicStructure> {
    let dim = family.first().map_or(2, |p| p.dim());
    for p in family {
        if p.dim() != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: p.dim(),
            });
        }
    }

    // Closure: bounds first, then members and complements in input order.
    let mut projectors: Vec<Projector> = vec![Projector::zero(dim), Projector::identity(dim)];
    let push_unique = |list: &mut Vec<Projector>, candidate: Projector| {
        if !list
            .iter()
            .any(|q| max_entry_diff(q.matrix(), candidate.matrix()) < 1e-10)
        {
            list.push(candidate);
        }
    };
    for p in family {
        push_unique(&mut projectors, p.clone());
        push_unique(&mut projectors, crate::operators::orthocomplement(p));
    }
    let n = projectors.len();
    if n > FAMILY_CAP {
        return Err(Error::FamilyTooLarge {
            size: n,
            cap: FAMILY_CAP,
        });
    }

    let generator_refs: Vec<&HermitianOperator> =
        projectors.iter().map(|p| p.operator()).collect();
    let probes = ProbeSet::build(dim, &generator_refs, n_haar_probes, rng);

    let elements: Vec<FuzzyEventQL> = projectors.iter().map(FuzzyEventQL::from_projector).collect();
    let labels: Vec<String> = projectors
        .iter()
        .enumerate()
        .map(|(k, p)| match k {
            0 => "0".to_string(),
            1 => "I".to_string(),
            _ => format!("P{}(rank {})", k, p.rank()),
        })
        .collect();

    let mut order = vec![vec![false; n]; n];
    let mut compat = vec![vec![false; n]; n];
    let mut orth = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            order[i][j] = projector_leq(&projectors[i], &projectors[j], tol)?;
            compat[i][j] = is_compatible(&elements[i], &elements[j], &probes, tol)?;
            orth[i][j] = is_orthogonal(&elements[i], &elements[j], &probes, tol)?;
        }
    }

    let mut complement = vec![0usize; n];
    for i in 0..n {
        let c = crate::operators::orthocomplement(&projectors[i]);
        complement[i] = projectors
            .iter()
            .position(|q| max_entry_diff(q.matrix(), c.matrix()) < 1e-9)
            .ok_or(Error::CertificationFailure {
                context: "complement closure",
                deviation: 1.0,
                limit: 0.0,
            })?;
    }

    let mut meet: Vec<Vec<LatticeEntry>> = Vec::with_capacity(n);
    let mut join: Vec<Vec<LatticeEntry>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut meet_row = Vec::with_capacity(n);
        let mut join_row = Vec::with_capacity(n);
        for j in 0..n {
            let (m, jn, path) = if compat[i][j] {
                let jm = join_meet_membership(&elements[i], &elements[j], &probes, tol)?;
                (
                    Projector::new(jm.meet.generator().clone(), tol)?,
                    Projector::new(jm.join.generator().clone(), tol)?,
                    LatticePath::Star,
                )
            } else {
                (
                    lattice_meet(&projectors[i], &projectors[j], tol)?,
                    lattice_join(&projectors[i], &projectors[j], tol)?,
                    LatticePath::OperatorLattice,
                )
            };
            let m_index = projectors
                .iter()
                .position(|q| max_entry_diff(q.matrix(), m.matrix()) < 1e-9);
            let j_index = projectors
                .iter()
                .position(|q| max_entry_diff(q.matrix(), jn.matrix()) < 1e-9);
            meet_row.push(LatticeEntry {
                projector: m,
                index: m_index,
                path,
            });
            join_row.push(LatticeEntry {
                projector: jn,
                index: j_index,
                path,
            });
        }
        meet.push(meet_row);
        join.push(join_row);
    }

    let structure = QuantumLogicStructure {
        dim,
        elements,
        labels,
        zero: 0,
        one: 1,
        order,
        complement,
        compat,
        orth,
        meet,
        join,
        probes,
    };
    validate_structure_invariants(&structure)?;
    Ok(structure)
}

fn validate_structure_invariants(s: &QuantumLogicStructure) -> Result<()> {
    let n = s.len();
    let fail = |context: &'static str| Error::CertificationFailure {
        context,
        deviation: 1.0,
        limit: 0.0,
    };
    for i in 0..n {
        if !s.order[i][i] {
            return Err(fail("order reflexivity"));
        }
        if s.complement[s.complement[i]] != i {
            return Err(fail("complement involution"));
        }
        for j in 0..n {
            if i != j && s.order[i][j] && s.order[j][i] {
                return Err(fail("order antisymmetry"));
            }
            if s.compat[i][j] != s.compat[j][i] || s.orth[i][j] != s.orth[j][i] {
                return Err(fail("relation symmetry"));
            }
            if s.orth[i][j] && !s.compat[i][j] {
                return Err(fail("orthogonality implies compatibility"));
            }
            if s.order[i][j] && !s.order[s.complement[j]][s.complement[i]] {
                return Err(fail("complement reverses order"));
            }
            for k in 0..n {
                if s.order[i][j] && s.order[j][k] && !s.order[i][k] {
                    return Err(fail("order transitivity"));
                }
            }
        }
    }
    Ok(())
}

/// Numeric (matrix-level) axiom report for a built structure.
#[derive(Debug, Clone)]
pub struct LogicAxiomReport {
    pub bounded_ok: bool,
    /// not(not P) = P, max entry deviation.
    pub involution_dev: f64,
    /// P ^ not P = 0 and P v not P = I, max entry deviation.
    pub complement_bounds_dev: f64,
    /// not(P v Q) = not P ^ not Q, max entry deviation.
    pub de_morgan_dev: f64,
    /// Orthomodularity q = p v (not p ^ q) on ordered pairs, max deviation.
    pub orthomodular_dev: f64,
    pub ordered_pairs_checked: usize,
    /// Orthogonal subfamilies whose join is missing from the family.
    pub sigma_missing: Vec<String>,
    pub orthogonal_families_checked: usize,
    pub distributive: bool,
    pub distributivity_witness: Option<(usize, usize, usize)>,
    /// Combinatorial axioms from the poset engine.
    pub poset: PosetAxiomReport,
}

impl LogicAxiomReport {
    pub fn quantum_logic_ok(&self, tol: &Tolerances) -> bool {
        self.bounded_ok
            && self.involution_dev <= tol.probe
            && self.complement_bounds_dev <= tol.probe
            && self.de_morgan_dev <= tol.probe
            && self.orthomodular_dev <= tol.probe
            && self.sigma_missing.is_empty()
            && self.poset.quantum_logic_ok()
    }
}

/// Verify the quantum-logic axioms of a built structure, matrix-level where
/// the operations are available and combinatorially through the poset
/// engine.
pub fn check_quantum_logic_axioms(
    s: &QuantumLogicStructure,
    max_orthogonal_family: usize,
    tol: &Tolerances,
) -> Result<LogicAxiomReport> {
    let n = s.len();
    let mut bounded_ok = true;
    let mut involution_dev = 0.0_f64;
    let mut complement_bounds_dev = 0.0_f64;
    let mut de_morgan_dev = 0.0_f64;
    let mut orthomodular_dev = 0.0_f64;
    let mut ordered_pairs_checked = 0usize;

    let zero_mat = s.elements[s.zero].generator().matrix().clone();
    let one_mat = s.elements[s.one].generator().matrix().clone();

    for i in 0..n {
        if !s.order[s.zero][i] || !s.order[i][s.one] {
            bounded_ok = false;
        }
        let p = s.elements[i].generator().matrix();
        let comp = s.elements[s.complement[i]].generator().matrix();
        let double = s.elements[s.complement[s.complement[i]]].generator().matrix();
        involution_dev = involution_dev.max(max_entry_diff(double, p));

        // P and not P commute, so the star path applies.
        let meet_matrix = s.meet[i][s.complement[i]].projector.matrix().clone();
        let join_matrix = s.join[i][s.complement[i]].projector.matrix().clone();
        complement_bounds_dev = complement_bounds_dev
            .max(max_entry_diff(&meet_matrix, &zero_mat))
            .max(max_entry_diff(&join_matrix, &one_mat));

        let _ = comp;
        for j in 0..n {
            // De Morgan: complement of the join vs meet of complements.
            let join_ij = &s.join[i][j].projector;
            let not_join = crate::operators::orthocomplement(join_ij);
            let meet_comp = &s.meet[s.complement[i]][s.complement[j]].projector;
            de_morgan_dev =
                de_morgan_dev.max(max_entry_diff(not_join.matrix(), meet_comp.matrix()));

            // Orthomodularity on ordered pairs: q = p v (not p ^ q).
            if s.order[i][j] {
                ordered_pairs_checked += 1;
                let inner = lattice_meet(
                    &Projector::new(s.elements[s.complement[i]].generator().clone(), tol)?,
                    &Projector::new(s.elements[j].generator().clone(), tol)?,
                    tol,
                )?;
                let outer = lattice_join(
                    &Projector::new(s.elements[i].generator().clone(), tol)?,
                    &inner,
                    tol,
                )?;
                orthomodular_dev = orthomodular_dev.max(max_entry_diff(
                    outer.matrix(),
                    s.elements[j].generator().matrix(),
                ));
            }
        }
    }

    // Sigma-orthocompleteness through the orthogonality relation: the join of
    // each orthogonal subfamily (the operator sum) must be in the family.
    let poset_view = s.as_poset();
    let cap = max_orthogonal_family.min(s.dim);
    let mut sigma_missing = Vec::new();
    let families = poset_view.orthogonal_families(cap.max(2));
    let orthogonal_families_checked = families.len();
    for family in &families {
        if !family
            .iter()
            .all(|&a| family.iter().all(|&b| a == b || s.orth[a][b]))
        {
            continue;
        }
        let mut sum = CMatrix::zeros(s.dim, s.dim);
        for &k in family {
            sum += s.elements[k].generator().matrix();
        }
        if s.find_by_matrix(&sum, 1e-9).is_none() {
            let names: Vec<&str> = family.iter().map(|&k| s.labels[k].as_str()).collect();
            sigma_missing.push(format!("join of {{{}}} not in family", names.join(", ")));
        }
    }

    let poset = poset_view.check(cap.max(2));

    Ok(LogicAxiomReport {
        bounded_ok,
        involution_dev,
        complement_bounds_dev,
        de_morgan_dev,
        orthomodular_dev,
        ordered_pairs_checked,
        sigma_missing,
        orthogonal_families_checked,
        distributive: poset.distributive,
        distributivity_witness: poset.distributivity_witness,
        poset,
    })
}

/// A state on the logic: normalized and additive on orthogonal families.
#[derive(Debug, Clone)]
pub enum GeneralizedProbabilityMeasure {
    /// sigma(P) = tr(rho T_P).
    Density(DensityMatrix),
    /// Point state sigma_p(P) = mu_P(p).
    Point(ProjectivePoint),
    /// Constant map (useful as a constructed failure).
    Constant(f64),
}

impl GeneralizedProbabilityMeasure {
    pub fn eval(&self, event: &FuzzyEventQL) -> f64 {
        match self {
            Self::Density(rho) => trace_product(rho.matrix(), event.generator().matrix()).re,
            Self::Point(p) => event.eval(p),
            Self::Constant(c) => *c,
        }
    }
}

/// Normalization and additivity report for one candidate state.
#[derive(Debug, Clone)]
pub struct GpmReport {
    pub normalization: f64,
    pub normalized_ok: bool,
    pub additivity_max_dev: f64,
    pub additivity_witness: Option<String>,
    pub families_checked: usize,
}

impl GpmReport {
    pub fn passed(&self) -> bool {
        self.normalized_ok && self.additivity_witness.is_none()
    }
}

/// Check sigma(I) = 1 and additivity on orthogonal subfamilies whose joins
/// exist in the family.
pub fn check_gpm(
    sigma: &GeneralizedProbabilityMeasure,
    s: &QuantumLogicStructure,
    max_orthogonal_family: usize,
    tol: &Tolerances,
) -> GpmReport {
    let normalization = sigma.eval(&s.elements()[s.one_index()]);
    let normalized_ok = (normalization - 1.0).abs() <= tol.probe;

    let poset = s.as_poset();
    let cap = max_orthogonal_family.min(s.dim()).max(2);
    let mut additivity_max_dev = 0.0_f64;
    let mut additivity_witness = None;
    let mut families_checked = 0usize;

    for family in poset.orthogonal_families(cap) {
        if !family
            .iter()
            .all(|&a| family.iter().all(|&b| a == b || s.orth()[a][b]))
        {
            continue;
        }
        // Join of an orthogonal family is the operator sum.
        let mut sum = CMatrix::zeros(s.dim(), s.dim());
        for &k in &family {
            sum += s.elements()[k].generator().matrix();
        }
        let Some(join_idx) = s.find_by_matrix(&sum, 1e-9) else {
            continue;
        };
        families_checked += 1;
        let lhs = sigma.eval(&s.elements()[join_idx]);
        let rhs: f64 = family.iter().map(|&k| sigma.eval(&s.elements()[k])).sum();
        let dev = (lhs - rhs).abs();
        if dev > additivity_max_dev {
            additivity_max_dev = dev;
        }
        if dev > tol.probe && additivity_witness.is_none() {
            let names: Vec<&str> = family.iter().map(|&k| s.labels()[k].as_str()).collect();
            additivity_witness = Some(format!(
                "sigma(join {{{}}}) = {lhs} but sum of parts = {rhs}",
                names.join(", ")
            ));
        }
    }

    GpmReport {
        normalization,
        normalized_ok,
        additivity_max_dev,
        additivity_witness,
        families_checked,
    }
}

/// Whether a set of states exhibits the order: ordered pairs are never
/// violated, and every non-ordered pair has a separating witness state.
#[derive(Debug, Clone)]
pub struct OrderingSetReport {
    pub ordered_pairs_ok: bool,
    pub ordered_violation: Option<String>,
    /// Non-ordered pairs with no witness state sigma(p) > sigma(q).
    pub missing_witnesses: Vec<(usize, usize)>,
    pub non_ordered_pairs: usize,
}

impl OrderingSetReport {
    pub fn passed(&self) -> bool {
        self.ordered_pairs_ok && self.missing_witnesses.is_empty()
    }
}

pub fn ordering_set_check(
    states: &[GeneralizedProbabilityMeasure],
    s: &QuantumLogicStructure,
    tol: &Tolerances,
) -> OrderingSetReport {
    let n = s.len();
    let mut report = OrderingSetReport {
        ordered_pairs_ok: true,
        ordered_violation: None,
        missing_witnesses: Vec::new(),
        non_ordered_pairs: 0,
    };
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            if s.order()[i][j] {
                for sigma in states {
                    let (vi, vj) = (sigma.eval(&s.elements()[i]), sigma.eval(&s.elements()[j]));
                    if vi > vj + tol.probe {
                        report.ordered_pairs_ok = false;
                        report.ordered_violation = Some(format!(
                            "{} <= {} but a state gives {vi} > {vj}",
                            s.labels()[i],
                            s.labels()[j]
                        ));
                    }
                }
            } else {
                report.non_ordered_pairs += 1;
                let found = states.iter().any(|sigma| {
                    sigma.eval(&s.elements()[i]) > sigma.eval(&s.elements()[j]) + tol.probe
                });
                if !found {
                    report.missing_witnesses.push((i, j));
                }
            }
        }
    }
    report
}

/// Point states at the probe points plus all eigenvector points of the
/// family generators; the standard ordering-set candidate.
pub fn point_states_for(s: &QuantumLogicStructure) -> Vec<GeneralizedProbabilityMeasure> {
    let mut states: Vec<GeneralizedProbabilityMeasure> = s
        .probes()
        .points()
        .iter()
        .map(|p| GeneralizedProbabilityMeasure::Point(p.clone()))
        .collect();
    for e in s.elements() {
        for p in e.generator().eigenpoints() {
            states.push(GeneralizedProbabilityMeasure::Point(p));
        }
    }
    states
}

/// Exact fast path for sigma(P) when the state is a Liouville density:
/// the fuzzy-state integral equals tr(sigma T) through the moment oracle.
pub fn fuzzy_state_value(
    sigma: &DensityMatrix,
    event: &FuzzyEventQL,
) -> Result<f64> {
    let n = sigma.dim() as f64;
    let m2 = moment2_exact(event.generator(), sigma.operator())?;
    let m1 = crate::measure::moment1_exact(event.generator());
    Ok(n * (n + 1.0) * m2 - n * m1)
}
