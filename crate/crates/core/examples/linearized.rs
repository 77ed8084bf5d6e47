//! Linearized transport on a two-variable toy connection.

use cyclokzb::numeric::linearized::linearized_transport_check;

fn main() -> cyclokzb::Result<()> {
    let r = linearized_transport_check(128)?;
    println!("constant gauge:     {:.2e}", r.constant_residual);
    println!("perturbed gauge:    {:.2e}", r.perturbed_residual);
    println!("closed form:        {:.2e}", r.closed_form_residual);
    println!("lambda dependence:  {:.2e}", r.lambda_gap);
    Ok(())
}
