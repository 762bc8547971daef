//! Orbits, growth witnesses and empirical hull coverage.

use convex_cyclic::dynamics::{
    empirical_density_scan, growth_witness, hull_contains, lattice, orbit, random_functional, GrowthOutcome, HullQuery,
};
use convex_cyclic::matrix::{Field, MatrixSpec};
use nalgebra::DVector;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let t = MatrixSpec::real_rows(&[&[-2.0, 0.0], &[0.0, -3.0]]);
    let x = DVector::from_element(2, Complex64::new(1.0, 0.0));

    print!("{}", orbit(&t, &x, 4).unwrap().to_csv());

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..3 {
        let f = random_functional(Field::Real, 2, &mut rng);
        match growth_witness(&t, &x, &f, 1e6, 2000).unwrap() {
            GrowthOutcome::Witness(w) => println!("Re<T^{} x, f> = {:.3e}", w.index, w.value),
            other => println!("{other:?}"),
        }
    }

    let grid = lattice(2, 5, -10.0, 10.0);
    let report = empirical_density_scan(&t, &x, &grid, 400).unwrap();
    println!("coverage of 5x5 grid: {}/{} with {} generators", report.covered, report.grid_points, report.generators);

    // Over C, diag(2i, -2i) keeps the two coordinates of x = (1, 1) conjugate,
    // so (1, 0) is never reached.
    let pair = MatrixSpec::diagonal(Field::Complex, &[Complex64::new(0.0, 2.0), Complex64::new(0.0, -2.0)]).unwrap();
    let points = orbit(&pair, &x, 40).unwrap().points;
    let q = HullQuery {
        points,
        target: DVector::from_vec(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]),
        tolerance: 1e-9,
    };
    println!("(1, 0) in the orbit hull of diag(2i, -2i): {}", hull_contains(&q));
}
