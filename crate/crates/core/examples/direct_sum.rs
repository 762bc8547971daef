//! A convex-cyclic vector for a direct sum, via a vanishing annihilator.

use convex_cyclic::dynamics::{direct_sum_vector, Summand};
use convex_cyclic::interpolation::{vanishing_annihilator, InterpolationProblem, RealNode, VanishingNode};
use convex_cyclic::jordan_forms::jordan_block;
use convex_cyclic::matrix::MatrixSpec;
use nalgebra::DVector;
use num_complex::Complex64;

fn real_vector(v: &[f64]) -> DVector<Complex64> {
    DVector::from_iterator(v.len(), v.iter().map(|&x| Complex64::new(x, 0.0)))
}

fn main() {
    let t1 = Summand { matrix: MatrixSpec::real_rows(&[&[-2.0, 0.0], &[0.0, -3.0]]), vector: real_vector(&[1.0, 1.0]) };
    let j = MatrixSpec::real(jordan_block(2, Complex64::new(-4.0, 0.0)).map(|z| z.re)).unwrap();
    let t2 = Summand { matrix: j, vector: real_vector(&[1.0, 0.0]) };

    // p0 kills the Jordan block at -4 and maps the spectrum of T1 to itself.
    let prescribed = InterpolationProblem::new(
        vec![RealNode { x: -2.0, targets: vec![-2.0] }, RealNode { x: -3.0, targets: vec![-4.0] }],
        vec![],
    );
    let cert = vanishing_annihilator(&[VanishingNode { node: Complex64::new(-4.0, 0.0), order: 2 }], &prescribed);
    let p0 = cert.polynomial().expect("annihilator exists").clone();
    println!("p0 has degree {}", p0.degree());

    let u = direct_sum_vector(&[t1, t2], &p0).expect("premises hold");
    println!("convex-cyclic vector: {:?}", u.iter().map(|z| z.re).collect::<Vec<_>>());
}
