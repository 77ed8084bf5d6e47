//! Polylogarithms at roots of unity, the Bernoulli pairing, and MZVs.

use cyclokzb::numeric::{bernoulli_pairing, li, li_log_series, multiple_li, BigC};
use cyclokzb::rational::fmt_q;
use cyclokzb::Root;

fn main() -> cyclokzb::Result<()> {
    let prec = 192;
    for (m, k, n) in [(2, 1, 4), (3, 1, 6), (5, 2, 7)] {
        let r = Root::new(k, n);
        let a = li(m, r, prec)?;
        let b = li_log_series(m, r, prec)?;
        println!("Li_{m}(zeta_{n}^{k}) = {}   (cross-check diff {:.1e})", a.to_decimal(40), a.dist(&b));
    }

    for m in 2..=5 {
        let p = bernoulli_pairing(m, Root::new(1, 5), prec)?;
        println!("pairing m={m}, zeta_5: {}", fmt_q(&p));
    }

    let one = BigC::one(prec);
    for idx in [vec![2u32], vec![1, 2], vec![1, 3], vec![2, 2], vec![1, 1, 2]] {
        let v = multiple_li(&idx, &vec![one.clone(); idx.len()], prec)?;
        println!("zeta{idx:?} = {}", v.to_decimal(40));
    }
    Ok(())
}
