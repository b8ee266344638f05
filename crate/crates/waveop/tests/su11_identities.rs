//! Interior-row identities of the truncated ladder algebra and the
//! equivalence of the closed-form generator with the generic builder.
//!
//! Truncation corrupts the outermost rows of operator products, so every
//! assertion runs on the window `2 <= i <= D - 3` where finite matrices
//! reproduce the infinite-dimensional algebra exactly.

use waveop::deep::{assemble_problem, DeepPotentialModel};
use waveop::su11::{
    build_a_operators, build_f_analytic, build_h_matrix, build_ladders, casimir_matrix,
    casimir_value, Su11Basis,
};
use waveop::{build_f_operator, commutator, OperatorMatrix};

const D: usize = 40;
const K_VALUES: [f64; 4] = [0.75, 1.25, 1.75, 2.3];

/// Max interior-window deviation between two matrices, relative to the
/// largest entry involved.
fn interior_rel_deviation(a: &OperatorMatrix, b: &OperatorMatrix, basis: &Su11Basis) -> f64 {
    let scale = a.max_norm().max(b.max_norm()).max(f64::MIN_POSITIVE);
    let mut worst = 0.0f64;
    for i in basis.interior() {
        for j in basis.interior() {
            worst = worst.max((a.get(i, j) - b.get(i, j)).abs());
        }
    }
    worst / scale
}

#[test]
fn generator_commutators_hold_on_interior_rows() {
    for &k in &K_VALUES {
        let basis = Su11Basis::new(k, D).unwrap();
        let lm = build_ladders(&basis);
        let cases = [
            (commutator(lm.k0(), lm.kplus()).unwrap(), lm.kplus().clone()),
            (
                commutator(lm.k0(), lm.kminus()).unwrap(),
                lm.kminus().scaled(-1.0),
            ),
            (
                commutator(lm.kplus(), lm.kminus()).unwrap(),
                lm.k0().scaled(-2.0),
            ),
        ];
        for (lhs, rhs) in &cases {
            assert!(
                interior_rel_deviation(lhs, rhs, &basis) < 1e-11,
                "ladder commutator identity failed at k = {}",
                k
            );
        }
    }
}

#[test]
fn casimir_is_constant_and_central_on_interior_rows() {
    for &k in &K_VALUES {
        let basis = Su11Basis::new(k, D).unwrap();
        let lm = build_ladders(&basis);
        let c2 = casimir_matrix(&lm);
        let expected = OperatorMatrix::identity(D).scaled(casimir_value(&basis));
        assert!(
            interior_rel_deviation(&c2, &expected, &basis) < 1e-11,
            "Casimir eigenvalue failed at k = {}",
            k
        );
        for gen in [lm.k0(), lm.kplus(), lm.kminus()] {
            let comm = commutator(&c2, gen).unwrap();
            assert!(
                interior_rel_deviation(&comm, &OperatorMatrix::zeros(D), &basis)
                    < 1e-11 * c2.max_norm().max(1.0),
                "Casimir does not commute at k = {}",
                k
            );
        }
    }
}

#[test]
fn composite_commutators_close_on_k0_polynomials() {
    for &k in &K_VALUES {
        let basis = Su11Basis::new(k, D).unwrap();
        let lm = build_ladders(&basis);
        let (aplus, aminus) = build_a_operators(&lm);
        let c2 = casimir_value(&basis);
        let k0 = lm.k0();
        let k0cubed = k0.matmul(k0).matmul(k0);

        // [A+, A-] = -16 K0^3 + 8 C2 K0 - 2 K0
        let lhs = commutator(&aplus, &aminus).unwrap();
        let rhs = k0cubed.scaled(-16.0).add(&k0.scaled(8.0 * c2 - 2.0));
        assert!(
            interior_rel_deviation(&lhs, &rhs, &basis) < 1e-11,
            "[A+, A-] identity failed at k = {}",
            k
        );

        // [K+^2, K-^2] = -2 (4 K0^3 - 4 C2 K0 + 2 K0)
        let kp2 = lm.kplus().matmul(lm.kplus());
        let km2 = lm.kminus().matmul(lm.kminus());
        let lhs2 = commutator(&kp2, &km2).unwrap();
        let rhs2 = k0cubed.scaled(-8.0).add(&k0.scaled(8.0 * c2 - 4.0));
        assert!(
            interior_rel_deviation(&lhs2, &rhs2, &basis) < 1e-11,
            "[K+^2, K-^2] identity failed at k = {}",
            k
        );
    }
}

#[test]
fn squared_shape_matches_its_expansion_on_interior_rows() {
    // (K+ + K- + 2 K0)^2 = 6 K0^2 - 2 C2 + 2 A+ + 2 A- + K+^2 + K-^2
    for &k in &K_VALUES {
        let basis = Su11Basis::new(k, D).unwrap();
        let lm = build_ladders(&basis);
        let shape = lm.kplus().add(lm.kminus()).add(&lm.k0().scaled(2.0));
        let squared = shape.matmul(&shape);
        let (aplus, aminus) = build_a_operators(&lm);
        let expanded = lm
            .k0()
            .matmul(lm.k0())
            .scaled(6.0)
            .sub(&OperatorMatrix::identity(D).scaled(2.0 * casimir_value(&basis)))
            .add(&aplus.scaled(2.0))
            .add(&aminus.scaled(2.0))
            .add(&lm.kplus().matmul(lm.kplus()))
            .add(&lm.kminus().matmul(lm.kminus()));
        assert!(
            interior_rel_deviation(&squared, &expanded, &basis) < 1e-11,
            "expansion equivalence failed at k = {}",
            k
        );
    }
}

#[test]
fn hermiticity_pairs_are_exact() {
    for &k in &K_VALUES {
        let basis = Su11Basis::new(k, D).unwrap();
        let lm = build_ladders(&basis);
        assert_eq!(lm.kminus(), &lm.kplus().transpose());
        let (aplus, aminus) = build_a_operators(&lm);
        assert_eq!(aminus, aplus.transpose());
    }
}

#[test]
fn closed_form_f_matches_the_generic_builder() {
    for l in 0..3u32 {
        let model = DeepPotentialModel::new(1.0, 1.0, 0.1, 1.0, 1.0, l).unwrap();
        let basis = Su11Basis::from_angular_momentum(l, D).unwrap();
        let lm = build_ladders(&basis);
        let analytic = build_f_analytic(&lm, &model).unwrap();
        let problem = assemble_problem(&model, D).unwrap();
        let generic = build_f_operator(&problem).unwrap();
        let dev = interior_rel_deviation(&analytic, &generic, &basis);
        assert!(
            dev < 1e-10,
            "closed-form F deviates by {:e} at l = {}",
            dev,
            l
        );
    }
}

#[test]
fn perturbation_diagonal_matches_the_casimir_form() {
    // interior diagonal of h equals -(hbar^2 beta / (2 mu alpha)) (6 m^2 - 2 C2)
    let model = DeepPotentialModel::new(2.0, 0.5, 0.07, 1.3, 1.0, 0).unwrap();
    let basis = Su11Basis::from_angular_momentum(0, D).unwrap();
    let lm = build_ladders(&basis);
    let h = build_h_matrix(&lm, &model).unwrap();
    let coeff = -model.hbar() * model.hbar() * model.beta() / (2.0 * model.mu() * model.alpha());
    let c2 = casimir_value(&basis);
    for i in basis.interior() {
        let m = basis.m_value(i);
        let expected = coeff * (6.0 * m * m - 2.0 * c2);
        assert!(
            (h.get(i, i) - expected).abs() < 1e-11 * h.max_norm(),
            "diagonal mismatch at row {}",
            i
        );
    }

    // and the first-order corrections read that same diagonal
    let problem = assemble_problem(&model, D).unwrap();
    let eps1 = waveop::first_order_corrections(&problem);
    for i in basis.interior() {
        assert_eq!(eps1[i], h.get(i, i));
    }
}
