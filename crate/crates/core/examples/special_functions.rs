//! Airy and Bessel functions and their zeros.
//!
//! cargo run --example special_functions

use stochop::specfun::{airy_ai, airy_ai_prime, bessel_j, zeros, ZeroKind};

fn main() -> stochop::Result<()> {
    for x in [-5.0, -1.0, 0.0, 1.0, 5.0] {
        println!("Ai({x:5.1}) = {:+.15e}   Ai'({x:5.1}) = {:+.15e}", airy_ai(x)?, airy_ai_prime(x)?);
    }
    let ai = zeros(ZeroKind::AiryAi, 5)?;
    println!("zeros of Ai: {:.10?} (residual {:.1e})", ai.zeros, ai.precision);

    for a in [0.0, 0.5, 1.0, 2.5] {
        let t = zeros(ZeroKind::BesselJ(a), 3)?;
        println!("J_{a}: J(1) = {:+.15}, zeros {:.10?}", bessel_j(a, 1.0)?, t.zeros);
    }
    Ok(())
}
