//! Lyndon bases of the KZ and KZB Lie algebras, and a BCH product via exp/log.

use cyclokzb::freelie::{lyndon_basis, Alphabet, LieElt};
use cyclokzb::ncseries::Ncs;

fn main() -> cyclokzb::Result<()> {
    let kz = Alphabet::kz(3);
    for w in (2..=10).step_by(2) {
        let basis = lyndon_basis(&kz, w)?;
        let shown: Vec<String> = basis.iter().filter(|b| kz.weight(b) == w).take(6).map(|b| kz.spell(b)).collect();
        println!("weight <= {w}: {} Lyndon words, e.g. {}", basis.len(), shown.join(" "));
    }

    // log(e^x e^y) at cutoff 6
    let a = Alphabet::kz(1);
    let x = LieElt::generator(a, 6, 0);
    let y = LieElt::generator(a, 6, 1);
    let bch = Ncs::exp(&x).mul(&Ncs::exp(&y))?.log()?;
    for (w, c) in bch.expand() {
        println!("{:>8}  {}", cyclokzb::rational::fmt_q(&c), a.spell(&w));
    }
    Ok(())
}
