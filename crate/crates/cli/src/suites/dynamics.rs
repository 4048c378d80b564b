//! Dynamics suite: the integrated Hamiltonian flow against the exact
//! unitary flow, conservation laws, and density transport.

use crate::config::SuiteConfig;
use crate::report::CheckRecord;
use crate::suites::label;
use projlogic_core::dynamics::{
    flow_deviation, hamilton_flow, liouville_transport_check, propagator, schrodinger_flow,
};
use projlogic_core::geometry::poisson_bracket;
use projlogic_core::linalg::{max_entry_diff, spectral_norm, trace_product};
use projlogic_core::operators::{
    minus_point, pauli_z, plus_point, random_hermitian, DensityMatrix, ProjectivePoint,
};
use projlogic_core::{rng, Result};
use std::f64::consts::PI;

fn grid(t_end: f64, n: usize) -> Vec<f64> {
    (0..=n).map(|k| t_end * k as f64 / n as f64).collect()
}

pub fn run(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let tol = &cfg.tol;
    let dim = cfg.dim;
    let mut records = Vec::new();

    // Fixed two-level checks: the equatorial state precesses to its
    // antipode at t = pi/2 under the diagonal (+1, -1) Hamiltonian, and
    // eigenstates stay put.
    {
        let flow = schrodinger_flow(&pauli_z(), &plus_point(), &[0.0, PI / 2.0], tol)?;
        records.push(CheckRecord::numeric(
            "exact_flow_half_period",
            "flow equivalence",
            1,
            max_entry_diff(flow.trajectory[1].matrix(), minus_point().matrix()),
            1e-10,
            "equatorial state reaches the antipodal state at t = pi/2",
        ));

        let p0 = ProjectivePoint::standard(2, 0);
        let stationary = schrodinger_flow(&pauli_z(), &p0, &grid(3.0, 7), tol)?;
        let worst = stationary
            .trajectory
            .iter()
            .fold(0.0_f64, |acc, p| acc.max(max_entry_diff(p.matrix(), p0.matrix())));
        records.push(CheckRecord::numeric(
            "exact_flow_eigenstate",
            "flow equivalence",
            8,
            worst,
            tol.oracle,
            "eigenstates are stationary",
        ));
    }

    // Integrated flow vs exact flow for the fixed two-level Hamiltonian.
    {
        let times = grid(2.0 * PI, 40);
        let exact = schrodinger_flow(&pauli_z(), &plus_point(), &times, tol)?;
        let integrated = hamilton_flow(&pauli_z(), &plus_point(), &times, 1e-3, tol)?;
        records.push(CheckRecord::numeric(
            "integrated_vs_exact_flow",
            "flow equivalence",
            times.len() as u64,
            flow_deviation(&exact, &integrated),
            tol.flow,
            "fourth-order integration at dt = 1e-3 over a full period",
        ));

        // Order-4 convergence: halving dt divides the defect by about 16.
        let coarse = hamilton_flow(&pauli_z(), &plus_point(), &times, 1e-2, tol)?;
        let fine = hamilton_flow(&pauli_z(), &plus_point(), &times, 5e-3, tol)?;
        let ratio = flow_deviation(&exact, &coarse) / flow_deviation(&exact, &fine);
        records.push(CheckRecord::witness(
            "convergence_order",
            "flow equivalence",
            2,
            (8.0..=32.0).contains(&ratio),
            format!("dt-halving defect ratio {ratio:.2} (expected within [8, 32])"),
        ));
    }

    // Random Hamiltonian at the configured dimension.
    {
        let mut rng = rng::stream(cfg.seed, &label("dynamics", "random"));
        let raw = random_hermitian(dim, 1.0, &mut rng);
        let h = raw.scale(1.0 / spectral_norm(raw.matrix()));
        let p0 = ProjectivePoint::haar(dim, &mut rng);
        let times = grid(2.0, 20);
        let exact = schrodinger_flow(&h, &p0, &times, tol)?;
        let integrated = hamilton_flow(&h, &p0, &times, 1e-3, tol)?;
        records.push(CheckRecord::numeric(
            "integrated_vs_exact_flow_random",
            "flow equivalence",
            times.len() as u64,
            flow_deviation(&exact, &integrated),
            tol.flow,
            "unit-norm random Hamiltonian at the configured dimension",
        ));

        // Conservation along the integrated flow.
        let e0 = h.expectation(&p0);
        let mut energy_dev = 0.0_f64;
        let mut purity_dev = 0.0_f64;
        for p in &integrated.trajectory {
            energy_dev = energy_dev.max((h.expectation(p) - e0).abs());
            purity_dev =
                purity_dev.max((trace_product(p.matrix(), p.matrix()).re - 1.0).abs());
        }
        records.push(CheckRecord::numeric(
            "energy_conservation",
            "energy conservation",
            integrated.trajectory.len() as u64,
            energy_dev,
            tol.energy,
            "f_H constant along the flow",
        ));
        records.push(CheckRecord::numeric(
            "purity_preservation",
            "flow equivalence",
            integrated.trajectory.len() as u64,
            purity_dev,
            tol.purity,
            format!(
                "max re-projection defect {:.3e}",
                integrated.max_defect()
            ),
        ));

        // Expectation transport against the exact propagator.
        let a = random_hermitian(dim, 1.0, &mut rng);
        let mut transport_dev = 0.0_f64;
        for (k, &time) in times.iter().enumerate() {
            let u = propagator(&h, time);
            let expected = a.expectation(&p0.conjugate_by(&u.adjoint()));
            transport_dev =
                transport_dev.max((a.expectation(&integrated.trajectory[k]) - expected).abs());
        }
        records.push(CheckRecord::numeric(
            "expectation_transport",
            "flow equivalence",
            times.len() as u64,
            transport_dev,
            1e-7,
            "f_A along the integrated flow against the exact propagator",
        ));

        // The observable rate of change equals the bracket.
        let dt = 1e-4;
        let flow3 = hamilton_flow(&h, &p0, &[0.0, dt, 2.0 * dt], 1e-5, tol)?;
        let rate_fd = (a.expectation(&flow3.trajectory[2]) - a.expectation(&flow3.trajectory[0]))
            / (2.0 * dt);
        let rate_pb = poisson_bracket(&a, &h, &flow3.trajectory[1], tol)?;
        records.push(CheckRecord::numeric(
            "observable_rate_vs_bracket",
            "Poisson bracket",
            3,
            (rate_fd - rate_pb).abs(),
            1e-5,
            "d/dt f_A along the flow against {f_A, f_H}",
        ));
    }

    // Density transport.
    {
        let mut rng = rng::stream(cfg.seed, &label("dynamics", "transport"));
        let probes: Vec<ProjectivePoint> =
            (0..64).map(|_| ProjectivePoint::haar(dim, &mut rng)).collect();
        let h = random_hermitian(dim, 1.0, &mut rng);

        let invariant = liouville_transport_check(
            &DensityMatrix::maximally_mixed(dim),
            &h,
            1.0,
            &probes,
        )?;
        records.push(CheckRecord::numeric(
            "transport_invariant_state",
            "density transport",
            probes.len() as u64,
            invariant,
            tol.oracle * 10.0,
            "maximally mixed state is a fixed point",
        ));

        let sigma = DensityMatrix::random(dim, &mut rng);
        let moved = liouville_transport_check(&sigma, &h, 1.0, &probes)?;
        records.push(CheckRecord::numeric(
            "transport_consistency",
            "density transport",
            probes.len() as u64,
            moved,
            tol.transport,
            "evolved density at p equals initial density at the pulled-back point",
        ));

        let frozen = liouville_transport_check(&sigma, &h, 0.0, &probes)?;
        records.push(CheckRecord::numeric(
            "transport_at_time_zero",
            "density transport",
            probes.len() as u64,
            frozen,
            tol.oracle * 10.0,
            "",
        ));
    }

    Ok(records)
}
