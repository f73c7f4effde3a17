//! Smallest singular values of the beta = inf hard-edge models against Bessel zeros.
//!
//! cargo run --release --example hard_edge_zero_temperature -- [a]

use stochop::ensembles::{jacobi_inf, laguerre_l_inf, laguerre_m_inf};
use stochop::scalings::{jacobi_hard, laguerre_hard};
use stochop::specfun::{zeros, ZeroKind};

fn main() -> stochop::Result<()> {
    let a: f64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0.0);
    let ja = zeros(ZeroKind::BesselJ(a), 1)?.zeros[0];
    // M^{inf, a+1} converges to the zeros of J_{a+1}
    let ja1 = zeros(ZeroKind::BesselJ(a + 1.0), 1)?.zeros[0];
    println!("j_(a,1) = {ja:.10}, j_(a+1,1) = {ja1:.10}");
    println!("{:>6} {:>12} {:>12} {:>12}", "n", "L_hard(a)", "M_hard(a+1)", "J_hard(a,0)");
    for n in [250, 500, 1000, 2000, 4000] {
        let l = laguerre_hard(&laguerre_l_inf(n, a)?)?.smallest(1)?[0];
        let m = laguerre_hard(&laguerre_m_inf(n, a + 1.0)?)?.smallest(1)?[0];
        let j = jacobi_hard(&jacobi_inf(n, a, 0.0)?)?.smallest(1)?[0];
        println!("{n:>6} {:>12.3e} {:>12.3e} {:>12.3e}", l - ja, m - ja1, j - ja);
    }
    Ok(())
}
