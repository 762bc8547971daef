//! Build a peaking convex-polynomial for a node set and run the growth scan.

use convex_cyclic::convex_poly::{find_growth_index, peaking_polynomial, GrowthQuery, PeakingOptions};
use num_complex::Complex64;

fn main() {
    let nodes = [
        Complex64::new(-3.0, 0.5),
        Complex64::new(0.0, 3.0),
        Complex64::new(1.5, -1.0),
        Complex64::new(-1.2, 0.0),
    ];
    let cert = peaking_polynomial(&nodes, &PeakingOptions::default()).expect("admissible nodes");
    println!("alpha = {}, m = {}, degree {}", cert.alpha, cert.m, cert.polynomial.degree());
    println!("peak at node {} = {}", cert.peak_index, cert.peak_point);
    for (i, z) in nodes.iter().enumerate() {
        println!("  |p(z_{i})| = {:.6e}", cert.polynomial.eval(*z).norm());
    }
    println!("relative margin {:.3}", cert.relative_margin);

    let avoid = PeakingOptions { avoid_real: true, ..PeakingOptions::default() };
    let off_axis = [Complex64::new(0.5, 2.0), Complex64::new(-1.0, 1.5)];
    match peaking_polynomial(&off_axis, &avoid) {
        Ok(c) => println!("off-axis peak: m = {}, alpha = {}", c.m, c.alpha),
        Err(e) => println!("off-axis peak failed: {e}"),
    }

    let q = GrowthQuery {
        theta: std::f64::consts::FRAC_PI_2,
        w: Complex64::new(1.0, 0.0),
        eps_seq: |_| Complex64::new(0.0, 0.0),
        m_seq: |n| 2f64.powi(n as i32),
        threshold: 100.0,
        max_n: 100,
    };
    println!("first n with 2^n Re(i^n) > 100: {}", find_growth_index(&q).unwrap());
}
