//! Classify a few matrices, both as dense input and as canonical forms.

use convex_cyclic::jordan_forms::{Block, DirectSumSpec};
use convex_cyclic::matrix::{Field, MatrixSpec};
use convex_cyclic::spectral::classify;
use num_complex::Complex64;

fn report(label: &str, t: &MatrixSpec) {
    let v = classify(t, None).expect("square finite matrix");
    println!(
        "{label:<28} cyclic={:<5} convex_cyclic={:<5} subspaces_only={:<5} reasons={:?}",
        v.is_cyclic,
        v.is_convex_cyclic,
        v.invariant_convex_sets_are_subspaces,
        v.reason_codes()
    );
}

fn main() {
    report("diag(-2, -3) over R", &MatrixSpec::real_rows(&[&[-2.0, 0.0], &[0.0, -3.0]]));
    report("diag(2, -3) over R", &MatrixSpec::real_rows(&[&[2.0, 0.0], &[0.0, -3.0]]));
    report("diag(-2, 0.5) over R", &MatrixSpec::real_rows(&[&[-2.0, 0.0], &[0.0, 0.5]]));

    let i2 = Complex64::new(0.0, 2.0);
    let pair = DirectSumSpec::new(vec![Block::diag(i2), Block::diag(i2.conj())]);
    report("diag(2i, -2i) over C", &pair.build_in(Field::Complex).unwrap());

    let rotation = DirectSumSpec::new(vec![Block::real_jordan(1, 2.0, 1.0)]);
    report("C_1(2, 1) over R", &rotation.build().unwrap());

    let jordan = DirectSumSpec::new(vec![Block::jordan(3, Complex64::new(-1.5, 0.0))]);
    report("J_3(-1.5) over R", &jordan.build().unwrap());
}
