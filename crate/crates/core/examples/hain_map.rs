//! The Hain map from the cyclotomic KZ algebra to the degenerate KZB algebra.

use cyclokzb::hain::{cylinder_check, hain_image, hain_relation_residual, lemma_d1, Gen};

fn main() -> cyclokzb::Result<()> {
    let cutoff = 6;
    let img = hain_image(2, Gen::parse("e0")?, cutoff)?;
    println!("Psi(e0) for N=2, cutoff {cutoff}:");
    println!("{}", serde_json::to_string_pretty(&img.to_json()).unwrap());

    for n in 1..=6 {
        println!("N={n}: relation residual zero = {}", hain_relation_residual(n, 8)?.is_zero());
    }
    println!("cylinder identity at cutoff 8: {}", cylinder_check(8)?);

    let r = lemma_d1(4, 5)?;
    println!("e0^n e_zeta -> Y^n t_zeta for N=4: {} (rank {} of {})", r.images_match, r.rank, r.count);
    Ok(())
}
