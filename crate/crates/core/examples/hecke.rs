//! Hecke operators on Eisenstein symbols, symbolically and by lattice sums.

use cyclokzb::hecke::{hecke_numeric, hecke_tp, psi, tp_on_ext, EisensteinSym};
use cyclokzb::numeric::BigC;
use cyclokzb::Root;

fn main() -> cyclokzb::Result<()> {
    let g = EisensteinSym::g(6, Root::new(1, 5))?;
    let t2 = hecke_tp(&g, 2)?;
    println!("T_2 G = {}", t2.to_json());
    println!("psi(T_2 G) = {}", psi(&t2)?.to_json());
    println!("T_2 psi(G) = {}", tp_on_ext(2, &psi(&g)?)?.to_json());

    let tau = BigC::i(128);
    for (n, m, p) in [(5, 6, 2), (5, 6, 3), (7, 5, 2)] {
        let r = hecke_numeric(n, m, p, &tau, 200, 128)?;
        println!("N={n} m={m} p={p}: residual {:.2e}, tail bound {:.2e}", r.residual, r.tail_bound);
    }
    Ok(())
}
