//! Regularized iterated integrals of KZ forms, Chen's identities, and the
//! transport along dch.

use cyclokzb::cli::dch_table;
use cyclokzb::numeric::iterint::{chen_properties, iterint, kz_forms, Tangent};
use cyclokzb::numeric::{BigC, PathSpec};

fn main() -> cyclokzb::Result<()> {
    let prec = 128;
    // ∫_0^1 w0 w1 with tangential base points at both ends is -ζ(2).
    let forms = kz_forms(1, prec);
    let mut path = PathSpec::polyline(vec![BigC::zero(prec), BigC::one(prec)]);
    path.start = Some(Tangent { direction: BigC::one(prec) });
    path.end = Some(Tangent { direction: BigC::one(prec).neg() });
    let r = iterint(&path, &forms, &[1, 0], prec)?;
    println!("I(e1 e0) on dch = {}  (error estimate {:.1e})", r.value.to_decimal(30), r.error);

    let c = chen_properties(10, 7, prec)?;
    println!("Chen identities on {} instances: shuffle {:.1e} inversion {:.1e} composition {:.1e}", c.instances, c.shuffle, c.inversion, c.composition);

    for (k, m, got, want, d) in dch_table(3, 2, prec)? {
        println!("N=3 k={k} m={m}: {}  vs  {}  diff {d:.1e}", got.to_decimal(20), want.to_decimal(20));
    }
    Ok(())
}
