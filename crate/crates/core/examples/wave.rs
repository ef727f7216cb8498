//! Field equation and time-translation current of the 1+1 wave equation.

use jetvar::dsl::parse_theory;
use jetvar::symkernel::display::{bundle_names, render_text};
use jetvar::variational::{euler_lagrange, noether_current, Limits};

fn main() -> jetvar::Result<()> {
    let src = "bundle { base: [t, x]; fields: [u]; }\n\
               lagrangian L = 1/2*u_t^2 - 1/2*u_x^2\n\
               vfield T = d/dt\n";
    let theory = parse_theory(src)?;
    let names = bundle_names(theory.bundle());
    let limits = Limits::default();

    let el = euler_lagrange(theory.lagrangian(None)?, &limits)?;
    println!("E[u]  = {}", render_text(&el[0], &names));

    let eps = noether_current(theory.lagrangian(None)?, theory.vfield(Some("T"))?, &limits)?;
    for (sigma, component) in ["t", "x"].iter().zip(&eps) {
        println!("eps^{sigma} = {}", render_text(component, &names));
    }
    Ok(())
}
