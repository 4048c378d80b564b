//! Fuzzy sets over the projective phase space: membership functions, grades,
//! inclusion, complement, and t-norm / t-conorm set operations.

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::operators::{operator_leq, HermitianOperator, ProjectivePoint};
use crate::tol::Tolerances;
use rand::Rng;
use std::sync::Arc;

type PointFn = Arc<dyn Fn(&ProjectivePoint) -> f64 + Send + Sync>;

/// Membership rule of a fuzzy set on the projective space.
#[derive(Clone)]
pub enum MembershipRule {
    /// mu(p) = tr(T p) for an effect operator 0 <= T <= I.
    Operator(HermitianOperator),
    /// Arbitrary pointwise rule with values in [0, 1].
    Pointwise(PointFn),
}

/// A [0, 1]-valued field on the projective space of a fixed dimension.
#[derive(Clone)]
pub struct MembershipFunction {
    dim: usize,
    rule: MembershipRule,
}

impl std::fmt::Debug for MembershipFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.rule {
            MembershipRule::Operator(t) => {
                write!(f, "MembershipFunction(operator, dim {})", t.dim())
            }
            MembershipRule::Pointwise(_) => {
                write!(f, "MembershipFunction(pointwise, dim {})", self.dim)
            }
        }
    }
}

impl MembershipFunction {
    /// Operator-generated membership; requires 0 <= T <= I so that grades
    /// stay in [0, 1] everywhere.
    pub fn from_operator(t: HermitianOperator, tol: &Tolerances) -> Result<Self> {
        let eigs = t.eigenvalues();
        let min_eig = eigs[0];
        let max_eig = eigs[eigs.len() - 1];
        if min_eig < -tol.effect || max_eig > 1.0 + tol.effect {
            return Err(Error::NotEffect { min_eig, max_eig });
        }
        Ok(Self {
            dim: t.dim(),
            rule: MembershipRule::Operator(t),
        })
    }

    pub fn from_fn<F>(dim: usize, f: F) -> Self
    where
        F: Fn(&ProjectivePoint) -> f64 + Send + Sync + 'static,
    {
        Self {
            dim,
            rule: MembershipRule::Pointwise(Arc::new(f)),
        }
    }

    pub fn constant(dim: usize, value: f64) -> Self {
        debug_assert!((0.0..=1.0).contains(&value));
        Self::from_fn(dim, move |_| value)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rule(&self) -> &MembershipRule {
        &self.rule
    }

    /// The generating operator, when the rule is operator form.
    pub fn generator(&self) -> Option<&HermitianOperator> {
        match &self.rule {
            MembershipRule::Operator(t) => Some(t),
            MembershipRule::Pointwise(_) => None,
        }
    }

    pub fn eval(&self, p: &ProjectivePoint) -> f64 {
        match &self.rule {
            MembershipRule::Operator(t) => t.expectation(p),
            MembershipRule::Pointwise(f) => f(p),
        }
    }

    /// Max violation of the [0, 1] range over probe points.
    pub fn range_defect(&self, probes: &[ProjectivePoint]) -> f64 {
        probes.iter().fold(0.0_f64, |acc, p| {
            let v = self.eval(p);
            acc.max((-v).max(v - 1.0).max(0.0))
        })
    }
}

/// Pointwise complement 1 - mu; the operator form maps T to I - T.
pub fn complement(a: &MembershipFunction) -> MembershipFunction {
    match &a.rule {
        MembershipRule::Operator(t) => {
            let dim = t.dim();
            let mat: CMatrix = CMatrix::identity(dim, dim) - t.matrix();
            MembershipFunction {
                dim,
                rule: MembershipRule::Operator(crate::operators::HermitianOperator::new(
                    mat,
                    &Tolerances::default(),
                )
                .expect("I - T stays Hermitian")),
            }
        }
        MembershipRule::Pointwise(f) => {
            let f = f.clone();
            MembershipFunction {
                dim: a.dim,
                rule: MembershipRule::Pointwise(Arc::new(move |p| 1.0 - f(p))),
            }
        }
    }
}

/// Fuzzy inclusion mu_A <= mu_B.
///
/// Operator-generated pairs are decided exactly through the operator order
/// (tr((T_B - T_A) p) >= 0 for all p iff T_B - T_A >= 0); other pairs are
/// compared pointwise on the probe set.
pub fn fuzzy_leq(
    a: &MembershipFunction,
    b: &MembershipFunction,
    probes: &[ProjectivePoint],
    tol: &Tolerances,
) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    if let (Some(ta), Some(tb)) = (a.generator(), b.generator()) {
        return operator_leq(ta, tb, tol);
    }
    Ok(probes.iter().all(|p| a.eval(p) <= b.eval(p) + tol.grade))
}

/// Classification of a grade against the crisp values 0 and 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GradeClass {
    NotIncluded,
    Partial,
    Included,
}

pub fn grade_class(a: &MembershipFunction, p: &ProjectivePoint, tol: &Tolerances) -> GradeClass {
    let grade = a.eval(p);
    if grade <= tol.grade {
        GradeClass::NotIncluded
    } else if grade >= 1.0 - tol.grade {
        GradeClass::Included
    } else {
        GradeClass::Partial
    }
}

type GradeRule = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Triangular norm on [0, 1] grades.
#[derive(Clone)]
pub enum TNorm {
    /// t(x, y) = max(x + y - 1, 0).
    Lukasiewicz,
    /// t(x, y) = x y.
    Product,
    /// Extension point for experimental norms (not loadable from files).
    Custom { name: String, rule: GradeRule },
}

impl TNorm {
    pub fn custom<F>(name: &str, rule: F) -> Self
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        Self::Custom {
            name: name.to_string(),
            rule: Arc::new(rule),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Self::Lukasiewicz => "lukasiewicz",
            Self::Product => "product",
            Self::Custom { name, .. } => name,
        }
    }

    pub fn apply(&self, x: f64, y: f64) -> f64 {
        match self {
            Self::Lukasiewicz => (x + y - 1.0).max(0.0),
            Self::Product => x * y,
            Self::Custom { rule, .. } => rule(x, y),
        }
    }

    /// Dual conorm s(x, y) = 1 - t(1 - x, 1 - y).
    pub fn conorm(&self, x: f64, y: f64) -> f64 {
        1.0 - self.apply(1.0 - x, 1.0 - y)
    }
}

/// Pointwise t-norm of two memberships. The result is pointwise-represented:
/// the operator form is not preserved by nonlinear grade maps.
pub fn tnorm_apply(
    t: &TNorm,
    a: &MembershipFunction,
    b: &MembershipFunction,
) -> Result<MembershipFunction> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let (t, a, b) = (t.clone(), a.clone(), b.clone());
    Ok(MembershipFunction::from_fn(a.dim(), move |p| {
        t.apply(a.eval(p), b.eval(p))
    }))
}

/// Pointwise t-conorm of two memberships.
pub fn tconorm_apply(
    t: &TNorm,
    a: &MembershipFunction,
    b: &MembershipFunction,
) -> Result<MembershipFunction> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let (t, a, b) = (t.clone(), a.clone(), b.clone());
    Ok(MembershipFunction::from_fn(a.dim(), move |p| {
        t.conorm(a.eval(p), b.eval(p))
    }))
}

/// Worst deviation and violation count for one t-norm axiom.
#[derive(Debug, Clone, Default)]
pub struct AxiomViolation {
    /// Largest measured deviation from the axiom identity/inequality.
    pub max_deviation: f64,
    /// Number of probes whose deviation exceeds the grid tolerance.
    pub violations: usize,
    /// Probe realizing the max deviation.
    pub worst: (f64, f64, f64),
}

impl AxiomViolation {
    fn update(&mut self, deviation: f64, probe: (f64, f64, f64), tol: f64) {
        if deviation > self.max_deviation {
            self.max_deviation = deviation;
            self.worst = probe;
        }
        if deviation > tol {
            self.violations += 1;
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Grid report for the four t-norm axioms: commutativity, monotonicity,
/// associativity, and the unit law t(x, 1) = x.
#[derive(Debug, Clone)]
pub struct TNormAxiomReport {
    pub commutativity: AxiomViolation,
    pub monotonicity: AxiomViolation,
    pub associativity: AxiomViolation,
    pub unit: AxiomViolation,
    pub grid_resolution: usize,
    pub random_triples: usize,
}

impl TNormAxiomReport {
    pub fn all_passed(&self) -> bool {
        self.commutativity.passed()
            && self.monotonicity.passed()
            && self.associativity.passed()
            && self.unit.passed()
    }
}

/// Check the t-norm axioms on a uniform grid plus random triples.
///
/// Commutativity and the unit law scan the full 2D grid; monotonicity
/// compares adjacent grid lines in each argument (sufficient on a grid by
/// transitivity); associativity scans the full 3D grid and the extra random
/// triples.
pub fn tnorm_axiom_check<R: Rng + ?Sized>(
    t: &TNorm,
    resolution: usize,
    random_triples: usize,
    rng: &mut R,
    tol: &Tolerances,
) -> TNormAxiomReport {
    assert!(resolution >= 11, "grid resolution below 11 is meaningless");
    let grid: Vec<f64> = (0..resolution)
        .map(|i| i as f64 / (resolution - 1) as f64)
        .collect();
    let mut report = TNormAxiomReport {
        commutativity: AxiomViolation::default(),
        monotonicity: AxiomViolation::default(),
        associativity: AxiomViolation::default(),
        unit: AxiomViolation::default(),
        grid_resolution: resolution,
        random_triples,
    };

    for &x in &grid {
        for &y in &grid {
            let txy = t.apply(x, y);
            report
                .commutativity
                .update((txy - t.apply(y, x)).abs(), (x, y, 0.0), tol.grid);
        }
        report
            .unit
            .update((t.apply(x, 1.0) - x).abs(), (x, 1.0, 0.0), tol.grid);
    }

    // Monotonicity in each argument along grid lines.
    for w in 0..resolution {
        for k in 0..resolution - 1 {
            let drop_first = t.apply(grid[k], grid[w]) - t.apply(grid[k + 1], grid[w]);
            report
                .monotonicity
                .update(drop_first.max(0.0), (grid[k], grid[w], 0.0), tol.grid);
            let drop_second = t.apply(grid[w], grid[k]) - t.apply(grid[w], grid[k + 1]);
            report
                .monotonicity
                .update(drop_second.max(0.0), (grid[w], grid[k], 0.0), tol.grid);
        }
    }

    let assoc_probe = |x: f64, y: f64, z: f64, report: &mut TNormAxiomReport| {
        let left = t.apply(t.apply(x, y), z);
        let right = t.apply(x, t.apply(y, z));
        report
            .associativity
            .update((left - right).abs(), (x, y, z), tol.grid);
    };
    for &x in &grid {
        for &y in &grid {
            for &z in &grid {
                assoc_probe(x, y, z, &mut report);
            }
        }
    }
    for _ in 0..random_triples {
        let x: f64 = rng.random_range(0.0..=1.0);
        let y: f64 = rng.random_range(0.0..=1.0);
        let z: f64 = rng.random_range(0.0..=1.0);
        assoc_probe(x, y, z, &mut report);
    }

    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{plus_point, Projector};
    use crate::rng;
    use approx::assert_abs_diff_eq;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn probes(dim: usize, count: usize) -> Vec<ProjectivePoint> {
        let mut rng = rng::stream(100, "fuzzy-probes");
        (0..count).map(|_| ProjectivePoint::haar(dim, &mut rng)).collect()
    }

    #[test]
    fn effect_bounds_enforced_at_construction() {
        let t = tol();
        let ok = HermitianOperator::from_real_diagonal(&[1.0, 0.5, 0.0]);
        assert!(MembershipFunction::from_operator(ok, &t).is_ok());
        let too_big = HermitianOperator::from_real_diagonal(&[1.5, 0.0, 0.0]);
        assert!(matches!(
            MembershipFunction::from_operator(too_big, &t),
            Err(Error::NotEffect { .. })
        ));
        let negative = HermitianOperator::from_real_diagonal(&[-0.2, 0.0, 0.0]);
        assert!(matches!(
            MembershipFunction::from_operator(negative, &t),
            Err(Error::NotEffect { .. })
        ));
    }

    #[test]
    fn complement_is_an_involution_and_keeps_operator_form() {
        let t = tol();
        let e1 = Projector::from_basis_indices(2, &[0]);
        let mu = MembershipFunction::from_operator(e1.operator().clone(), &t).unwrap();
        let back = complement(&complement(&mu));
        assert!(back.generator().is_some(), "operator form preserved");
        for p in probes(2, 50) {
            assert_abs_diff_eq!(back.eval(&p), mu.eval(&p), epsilon = 1e-12);
        }
        let zero = MembershipFunction::constant(2, 0.0);
        let one = complement(&zero);
        for p in probes(2, 10) {
            assert_eq!(one.eval(&p), 1.0);
        }
    }

    #[test]
    fn fuzzy_leq_operator_and_pointwise_paths() {
        let t = tol();
        let ps = probes(2, 64);
        let e1 = MembershipFunction::from_operator(
            Projector::from_basis_indices(2, &[0]).operator().clone(),
            &t,
        )
        .unwrap();
        let top =
            MembershipFunction::from_operator(HermitianOperator::identity(2), &t).unwrap();
        assert!(fuzzy_leq(&e1, &e1, &ps, &t).unwrap());
        assert!(fuzzy_leq(&e1, &top, &ps, &t).unwrap());

        let plus = MembershipFunction::from_operator(
            HermitianOperator::new(plus_point().matrix().clone(), &t).unwrap(),
            &t,
        )
        .unwrap();
        assert!(!fuzzy_leq(&e1, &plus, &ps, &t).unwrap());
        assert!(!fuzzy_leq(&plus, &e1, &ps, &t).unwrap());

        // Pointwise path.
        let small = MembershipFunction::constant(2, 0.2);
        let large = MembershipFunction::constant(2, 0.8);
        assert!(fuzzy_leq(&small, &large, &ps, &t).unwrap());
        assert!(!fuzzy_leq(&large, &small, &ps, &t).unwrap());
    }

    #[test]
    fn grade_classification() {
        let t = tol();
        let p = plus_point();
        assert_eq!(
            grade_class(&MembershipFunction::constant(2, 1.0), &p, &t),
            GradeClass::Included
        );
        assert_eq!(
            grade_class(&MembershipFunction::constant(2, 0.0), &p, &t),
            GradeClass::NotIncluded
        );
        let e1 = MembershipFunction::from_operator(
            Projector::from_basis_indices(2, &[0]).operator().clone(),
            &t,
        )
        .unwrap();
        assert_eq!(grade_class(&e1, &p, &t), GradeClass::Partial);
        assert_abs_diff_eq!(e1.eval(&p), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn built_in_tnorm_values() {
        let luk = TNorm::Lukasiewicz;
        assert_abs_diff_eq!(luk.apply(0.7, 0.5), 0.2, epsilon = 1e-15);
        assert_abs_diff_eq!(luk.conorm(0.7, 0.5), 1.0, epsilon = 1e-15);
        let prod = TNorm::Product;
        assert_abs_diff_eq!(prod.apply(0.7, 0.5), 0.35, epsilon = 1e-15);
        assert_abs_diff_eq!(prod.conorm(0.7, 0.5), 0.85, epsilon = 1e-15);
    }

    #[test]
    fn built_in_axioms_pass_with_zero_violations() {
        let t = tol();
        let mut rng = rng::stream(101, "axioms");
        for norm in [TNorm::Lukasiewicz, TNorm::Product] {
            let report = tnorm_axiom_check(&norm, 101, 10_000, &mut rng, &t);
            assert!(report.all_passed(), "{}: {report:?}", norm.name());
            assert!(report.commutativity.max_deviation == 0.0);
            assert!(report.unit.max_deviation < 1e-12);
            assert!(report.associativity.max_deviation < 1e-12);
            assert!(report.monotonicity.max_deviation == 0.0);
        }
    }

    #[test]
    fn squared_min_fails_the_unit_axiom() {
        let t = tol();
        let mut rng = rng::stream(102, "bad-norm");
        let bad = TNorm::custom("squared-min", |x, y| x.min(y).powi(2));
        let report = tnorm_axiom_check(&bad, 101, 0, &mut rng, &t);
        assert!(!report.unit.passed());
        assert_abs_diff_eq!(report.unit.max_deviation, 0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(report.unit.worst.0, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn de_morgan_duality_of_derived_conorm() {
        let t = tol();
        let ps = probes(2, 50);
        let e1 = MembershipFunction::from_operator(
            Projector::from_basis_indices(2, &[0]).operator().clone(),
            &t,
        )
        .unwrap();
        let plus = MembershipFunction::from_operator(
            HermitianOperator::new(plus_point().matrix().clone(), &t).unwrap(),
            &t,
        )
        .unwrap();
        for norm in [TNorm::Lukasiewicz, TNorm::Product] {
            let direct = tconorm_apply(&norm, &e1, &plus).unwrap();
            let from_complement = complement(
                &tnorm_apply(&norm, &complement(&e1), &complement(&plus)).unwrap(),
            );
            for p in &ps {
                assert_abs_diff_eq!(
                    direct.eval(p),
                    from_complement.eval(p),
                    epsilon = 1e-12
                );
            }
        }
    }

    #[test]
    fn lukasiewicz_union_matches_clipped_sum() {
        // The clipped-sum union and the conorm derived from the Lukasiewicz
        // t-norm are the same function.
        let luk = TNorm::Lukasiewicz;
        for i in 0..=20 {
            for j in 0..=20 {
                let x = i as f64 / 20.0;
                let y = j as f64 / 20.0;
                let direct = (x + y).min(1.0);
                assert_abs_diff_eq!(luk.conorm(x, y), direct, epsilon = 1e-12);
                let intersection = (x + y - 1.0).max(0.0);
                assert_abs_diff_eq!(luk.apply(x, y), intersection, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn product_intersection_of_operator_events_is_pointwise_product() {
        let t = tol();
        let ps = probes(2, 50);
        let a = MembershipFunction::from_operator(
            Projector::from_basis_indices(2, &[0]).operator().clone(),
            &t,
        )
        .unwrap();
        let b = MembershipFunction::from_operator(
            HermitianOperator::new(plus_point().matrix().clone(), &t).unwrap(),
            &t,
        )
        .unwrap();
        let meet = tnorm_apply(&TNorm::Product, &a, &b).unwrap();
        for p in &ps {
            assert_abs_diff_eq!(meet.eval(p), a.eval(p) * b.eval(p), epsilon = 1e-15);
        }
    }

    #[test]
    fn boundary_law_follows_from_unit_and_monotonicity() {
        for norm in [TNorm::Lukasiewicz, TNorm::Product] {
            for i in 0..=100 {
                let x = i as f64 / 100.0;
                assert_eq!(norm.apply(x, 0.0), 0.0);
            }
        }
    }

    #[test]
    fn range_defect_detects_out_of_range_rules() {
        let ps = probes(2, 20);
        let ok = MembershipFunction::constant(2, 0.5);
        assert_eq!(ok.range_defect(&ps), 0.0);
        let bad = MembershipFunction::from_fn(2, |_| 1.25);
        assert_abs_diff_eq!(bad.range_defect(&ps), 0.25, epsilon = 1e-15);
    }
}
