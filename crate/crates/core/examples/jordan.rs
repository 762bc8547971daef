//! Polynomials on Jordan blocks and realification of complex vectors.

use convex_cyclic::convex_poly::ConvexPolynomial;
use convex_cyclic::jordan_forms::{complexify, jordan_block, poly_on_jordan_block, real_block_power, realify};
use num_complex::Complex64;

fn main() {
    let p = ConvexPolynomial::peaking(3, 0.5);
    let lambda = Complex64::new(-1.5, 0.5);
    let closed = poly_on_jordan_block(p.coeffs(), lambda, 3);
    let dense = p.coeffs().iter().rev().fold(nalgebra::DMatrix::zeros(3, 3), |acc, &c| {
        acc * jordan_block(3, lambda) + nalgebra::DMatrix::identity(3, 3) * Complex64::new(c, 0.0)
    });
    // The block is lower triangular, so the first column holds p(λ), p'(λ), p''(λ)/2.
    for (j, v) in closed.column(0).iter().enumerate() {
        println!("p^({j})(lambda)/{j}! = {v:.6}");
    }
    println!("difference from dense Horner: {:.2e}", (closed - dense).norm());

    println!("C_1(2, 0.3)^4 =\n{}", real_block_power(2.0, 0.3, 1, 4));

    let z = [Complex64::new(1.0, 2.0), Complex64::new(-0.5, 0.25)];
    let x = realify(&z);
    println!("realify {z:?} -> {x:?} -> {:?}", complexify(&x).unwrap());
}
