//! Smallest eigenvalues of the beta = inf soft-edge models against -zeta_k.
//!
//! cargo run --release --example soft_edge_zero_temperature

use stochop::ensembles::{hermite_inf, laguerre_l_inf, laguerre_m_inf};
use stochop::scalings::{hermite_soft, laguerre_soft};
use stochop::specfun::{zeros, ZeroKind};

fn main() -> stochop::Result<()> {
    let want: Vec<f64> = zeros(ZeroKind::AiryAi, 3)?.zeros.iter().map(|z| -z).collect();
    println!("target {want:.8?}");
    println!("{:>7}  {:>10} {:>10} {:>10}  {:>10} {:>10}", "n", "H err1", "H err2", "H err3", "L(-1/2)", "M(1/2)");
    for n in [100, 1_000, 10_000, 100_000] {
        let h = hermite_soft(&hermite_inf(n)?)?.smallest(3)?;
        // the error matrices vanish at these parameters
        let l = laguerre_soft(&laguerre_l_inf(n, -0.5)?)?.smallest(1)?;
        let m = laguerre_soft(&laguerre_m_inf(n, 0.5)?)?.smallest(1)?;
        println!(
            "{n:>7}  {:>10.2e} {:>10.2e} {:>10.2e}  {:>10.2e} {:>10.2e}",
            h[0] - want[0],
            h[1] - want[1],
            h[2] - want[2],
            l[0] - want[0],
            m[0] - want[0]
        );
    }
    Ok(())
}
