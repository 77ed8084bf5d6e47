//! The star relation mod D^2 and the transported Betti comparison.

use cyclokzb::numeric::star::{betti_transport_check, star_check};

fn main() -> cyclokzb::Result<()> {
    for n in 1..=4 {
        let r = star_check(n, 128)?;
        println!("N={n}: residual {:.2e}, perturbed {:.2e}", r.residual, r.perturbed_residual);
    }
    let b = betti_transport_check(2, 3, 128)?;
    for (k, m, _, val, diff) in &b.rows {
        println!("k={k} m={m}: {}  diff {diff:.1e}", val.to_decimal(20));
    }
    Ok(())
}
