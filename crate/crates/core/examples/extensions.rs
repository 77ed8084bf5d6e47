//! Extension classes: dimensions, decompositions of Li_m(zeta^j), and heads.

use cyclokzb::extdecomp::{basis, decompose, ext_dim, head, head_rank};

fn main() -> cyclokzb::Result<()> {
    for n in [1u64, 2, 5, 7, 12] {
        let dims: Vec<String> = (2..=6).map(|m| ext_dim(n, m).map(|d| d.to_string())).collect::<Result<_, _>>()?;
        println!("N={n:>2} dims m=2..6: {}", dims.join(" "));
    }

    let (n, m) = (12, 3);
    for j in 0..n {
        println!("Li_{m}(zeta_{n}^{j}) = {}", decompose(n, m, j)?.to_json()["coords"]);
    }

    for z in basis(5, 3) {
        println!("head {}", head(5, 3, z)?.to_json());
    }
    println!("head rank N=11, m=4: {}", head_rank(11, 4)?);
    Ok(())
}
