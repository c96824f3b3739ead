//! Randomized algebraic properties of the matrix core, the diagram
//! evaluator, and the state layer.

use std::collections::BTreeMap;

use proptest::prelude::*;

use cupcap::diagram::{compose_min_max, Diagram, Generator, Slice};
use cupcap::states::{
    born_distribution, cup_state_from_matrix, is_entangled_two_qubit, measurement_state_from_matrix,
    post_select,
};
use cupcap::{Complex64, Ket64, Matrix64};

fn complex_entry() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix64> {
    proptest::collection::vec(complex_entry(), rows * cols)
        .prop_map(move |entries| Matrix64::new(rows, cols, entries).expect("finite entries"))
}

fn sized_matrix() -> impl Strategy<Value = Matrix64> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(rows, cols)| matrix(rows, cols))
}

fn invertible_2x2() -> impl Strategy<Value = Matrix64> {
    matrix(2, 2).prop_filter("determinant too small", |m| {
        m.det_2x2().expect("2x2 shape").norm() >= 0.2
    })
}

fn symmetric_invertible_2x2() -> impl Strategy<Value = Matrix64> {
    (complex_entry(), complex_entry(), complex_entry())
        .prop_map(|(a, b, c)| Matrix64::new(2, 2, vec![a, b, b, c]).expect("finite entries"))
        .prop_filter("determinant too small", |m| {
            m.det_2x2().expect("2x2 shape").norm() >= 0.2
        })
}

fn ket(num_qubits: usize) -> impl Strategy<Value = Ket64> {
    proptest::collection::vec(complex_entry(), 1usize << num_qubits)
        .prop_map(|amps| Ket64::from_amplitudes(amps).expect("finite amplitudes"))
        .prop_filter("norm too small", |k| k.norm_sqr() >= 0.1)
}

/// Closed diagram with one cup at the bottom and one cap at the top.
fn circle(cup: &Matrix64, cap: &Matrix64) -> Diagram<f64> {
    let mut table = BTreeMap::new();
    table.insert("a".to_string(), cup.clone());
    table.insert("b".to_string(), cap.clone());
    Diagram::new(
        table,
        vec![
            Slice::new(vec![Generator::Cup("a".to_string())]),
            Slice::new(vec![Generator::Cap("b".to_string())]),
        ],
    )
}

fn closed_value(diagram: &Diagram<f64>) -> Complex64 {
    let value = diagram.evaluate().expect("diagram is well formed");
    assert_eq!(value.shape(), (1, 1), "diagram should be closed");
    value.get(0, 0)
}

proptest! {
    #[test]
    fn kron_is_associative(a in sized_matrix(), b in sized_matrix(), c in sized_matrix()) {
        let left = a.kron(&b).unwrap().kron(&c).unwrap();
        let right = a.kron(&b.kron(&c).unwrap()).unwrap();
        prop_assert!(left.max_abs_diff(&right).unwrap() <= 1e-12);
    }

    #[test]
    fn kron_mixed_product(
        (a, b, c, d) in (1usize..=3, 1usize..=3, 1usize..=3, 1usize..=3, 1usize..=3, 1usize..=3)
            .prop_flat_map(|(m, n, p, q, r, s)| (matrix(m, n), matrix(n, p), matrix(q, r), matrix(r, s)))
    ) {
        let left = a.kron(&c).unwrap().matmul(&b.kron(&d).unwrap()).unwrap();
        let right = a.matmul(&b).unwrap().kron(&c.matmul(&d).unwrap()).unwrap();
        prop_assert!(left.max_abs_diff(&right).unwrap() <= 1e-12);
    }

    #[test]
    fn dagger_is_an_involution(a in sized_matrix()) {
        prop_assert_eq!(a.dagger().dagger().max_abs_diff(&a).unwrap(), 0.0);
    }

    #[test]
    fn dagger_reverses_products(
        (a, b) in (1usize..=3, 1usize..=3, 1usize..=3)
            .prop_flat_map(|(m, n, p)| (matrix(m, n), matrix(n, p)))
    ) {
        let left = a.matmul(&b).unwrap().dagger();
        let right = b.dagger().matmul(&a.dagger()).unwrap();
        prop_assert!(left.max_abs_diff(&right).unwrap() <= 1e-12);
    }

    #[test]
    fn trace_splits_over_kron(
        (a, b) in (1usize..=3, 1usize..=3).prop_flat_map(|(m, n)| (matrix(m, m), matrix(n, n)))
    ) {
        let joint = a.kron(&b).unwrap().trace().unwrap();
        let split = a.trace().unwrap() * b.trace().unwrap();
        prop_assert!((joint - split).norm() <= 1e-12);
    }

    #[test]
    fn circle_value_is_the_pair_trace(cup in matrix(2, 2), cap in matrix(2, 2)) {
        let value = closed_value(&circle(&cup, &cap));
        let expected = cap.matmul(&cup.transpose()).unwrap().trace().unwrap();
        prop_assert!((value - expected).norm() <= 1e-12);
    }

    /// Splicing a bent pair of mutually inverse generators into the two open
    /// wires of a circle straightens away and leaves the value unchanged.
    #[test]
    fn zig_zag_insertion_preserves_value(
        cup in matrix(2, 2),
        cap in matrix(2, 2),
        bend in invertible_2x2(),
        left_side in proptest::bool::ANY,
    ) {
        let plain = closed_value(&circle(&cup, &cap));
        let bend_inverse = bend.inverse_2x2().unwrap();
        let mut table = BTreeMap::new();
        table.insert("a".to_string(), cup.clone());
        table.insert("b".to_string(), cap.clone());
        table.insert("c".to_string(), bend);
        table.insert("cinv".to_string(), bend_inverse);
        let (grow, shrink) = if left_side {
            (
                Slice::new(vec![
                    Generator::IdWire,
                    Generator::Cup("c".to_string()),
                    Generator::IdWire,
                ]),
                Slice::new(vec![
                    Generator::Cap("cinv".to_string()),
                    Generator::IdWire,
                    Generator::IdWire,
                ]),
            )
        } else {
            (
                Slice::new(vec![
                    Generator::IdWire,
                    Generator::IdWire,
                    Generator::Cup("c".to_string()),
                ]),
                Slice::new(vec![
                    Generator::IdWire,
                    Generator::Cap("cinv".to_string()),
                    Generator::IdWire,
                ]),
            )
        };
        let spliced = Diagram::new(
            table,
            vec![
                Slice::new(vec![Generator::Cup("a".to_string())]),
                grow,
                shrink,
                Slice::new(vec![Generator::Cap("b".to_string())]),
            ],
        );
        prop_assert!((closed_value(&spliced) - plain).norm() <= 1e-9);
    }

    /// Disjoint and nested circles of one symmetric generator both multiply
    /// the single-loop value.
    #[test]
    fn loops_multiply_for_symmetric_generators(m in symmetric_invertible_2x2()) {
        let loop_value: Complex64 = m.entries().iter().map(|z| z * z).sum();
        let single = closed_value(&circle(&m, &m));
        prop_assert!((single - loop_value).norm() <= 1e-12);

        let mut table = BTreeMap::new();
        table.insert("m".to_string(), m.clone());
        let side_by_side = Diagram::new(
            table.clone(),
            vec![
                Slice::new(vec![
                    Generator::Cup("m".to_string()),
                    Generator::Cup("m".to_string()),
                ]),
                Slice::new(vec![
                    Generator::Cap("m".to_string()),
                    Generator::Cap("m".to_string()),
                ]),
            ],
        );
        prop_assert!((closed_value(&side_by_side) - loop_value * loop_value).norm() <= 1e-10);

        let nested = Diagram::new(
            table,
            vec![
                Slice::new(vec![Generator::Cup("m".to_string())]),
                Slice::new(vec![
                    Generator::IdWire,
                    Generator::Cup("m".to_string()),
                    Generator::IdWire,
                ]),
                Slice::new(vec![
                    Generator::IdWire,
                    Generator::Cap("m".to_string()),
                    Generator::IdWire,
                ]),
                Slice::new(vec![Generator::Cap("m".to_string())]),
            ],
        );
        prop_assert!((closed_value(&nested) - loop_value * loop_value).norm() <= 1e-10);
    }

    /// Post-selecting a cap against a state paired with a cup acts on the
    /// state by the rows of the min-max composite.
    #[test]
    fn composition_acts_by_the_composite_rows(
        cap in matrix(2, 2),
        cup in matrix(2, 2),
        psi in ket(1),
    ) {
        let pair = cup_state_from_matrix(&cup).unwrap();
        let joint = psi.tensor(pair.ket()).unwrap();
        let measurement = measurement_state_from_matrix(&cap).unwrap();
        let residual = post_select(&measurement, &joint).unwrap().raw_residual;
        let composite = compose_min_max(&cap, &cup).unwrap();
        for j in 0..2 {
            let expected = composite.get(0, j) * psi.amplitude(0)
                + composite.get(1, j) * psi.amplitude(1);
            prop_assert!((residual.amplitude(j) - expected).norm() <= 1e-10);
        }
    }

    /// The raw residual of a pair measurement applies the coefficient matrix
    /// rows to the input state.
    #[test]
    fn pair_measurement_acts_by_rows(
        (n, psi, m) in (1usize..=2)
            .prop_flat_map(|n| (Just(n), ket(n), matrix(1 << n, 1 << n)))
    ) {
        let side = 1usize << n;
        let pair = cupcap::states::delta_state::<f64>(n).unwrap();
        let joint = psi.tensor(pair.ket()).unwrap();
        let measurement = measurement_state_from_matrix(&m).unwrap();
        let residual = post_select(&measurement, &joint).unwrap().raw_residual;
        prop_assert_eq!(residual.len(), side);
        for j in 0..side {
            let expected: Complex64 = (0..side).map(|a| m.get(a, j) * psi.amplitude(a)).sum();
            prop_assert!((residual.amplitude(j) - expected).norm() <= 1e-10);
        }
    }

    #[test]
    fn born_probabilities_sum_to_one(
        (measured, state) in (1usize..=3, 0usize..=2)
            .prop_flat_map(|(measured, extra)| (Just(measured), ket(measured + extra)))
    ) {
        let basis: Vec<_> = (0..1usize << measured)
            .map(|index| Ket64::basis_state(measured, index).unwrap().dual())
            .collect();
        let probabilities = born_distribution(&basis, &state).unwrap();
        let total: f64 = probabilities.iter().sum();
        prop_assert!((total - 1.0).abs() <= 1e-10);
        prop_assert!(probabilities.iter().all(|p| (0.0..=1.0 + 1e-12).contains(p)));
    }

    #[test]
    fn invertible_pairs_are_entangled(m in invertible_2x2()) {
        let state = cup_state_from_matrix(&m).unwrap();
        prop_assert!(is_entangled_two_qubit(state.ket(), 1e-10).unwrap());
    }

    #[test]
    fn rank_one_pairs_are_not_entangled(u in ket(1), v in ket(1)) {
        let product = u.tensor(&v).unwrap();
        prop_assert!(!is_entangled_two_qubit(&product, 1e-10).unwrap());
    }
}
