//! Convex-polynomial interpolation with values and derivatives.

use convex_cyclic::interpolation::{
    check_admissibility, solve, ComplexNode, InterpolationCertificate, InterpolationProblem, RealNode,
};
use num_complex::Complex64;

fn show(label: &str, prob: &InterpolationProblem) {
    let report = check_admissibility(prob);
    match solve(prob) {
        InterpolationCertificate::Feasible { polynomial, degree_used, max_residual } => {
            println!("{label}: feasible at degree {degree_used}, residual {max_residual:.1e}, {} terms", polynomial.coeffs().len());
        }
        other => println!("{label}: {other:?} (admissible: {})", report.admissible),
    }
}

fn main() {
    let value = InterpolationProblem::new(vec![RealNode { x: -2.0, targets: vec![7.0] }], vec![]);
    show("p(-2) = 7", &value);

    let hermite = InterpolationProblem::new(vec![RealNode { x: -2.0, targets: vec![0.0, 1.0] }], vec![]);
    show("p(-2) = 0, p'(-2) = 1", &hermite);

    let mixed = InterpolationProblem::new(
        vec![RealNode { x: -3.0, targets: vec![-1.0, 4.0] }],
        vec![ComplexNode {
            z: Complex64::new(0.5, 2.0),
            targets: vec![Complex64::new(3.0, -1.0), Complex64::new(0.0, 2.0)],
        }],
    );
    show("mixed real/complex Hermite", &mixed);

    let disk = InterpolationProblem::new(vec![], vec![ComplexNode { z: Complex64::new(0.5, 0.1), targets: vec![Complex64::new(5.0, 0.0)] }]);
    show("node inside the disk", &disk);
}
