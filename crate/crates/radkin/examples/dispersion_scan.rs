//! Root structure of the cold dispersion relation with radiation
//! reaction.
//!
//! For each tau the cubic has two damped oscillating roots (the plasma
//! wave, damping rate wp^2 tau / 2, frequency downshift (5/8)(wp tau)^2)
//! and one purely growing root near i/tau. Continuation in tau classifies
//! the pair as physical and the growing root as a runaway artifact.
//!
//! ```text
//! cargo run --release --example dispersion_scan
//! ```

use radkin::dispersion::{
    cold_asymptotic_roots, cold_dispersion_roots, default_seeds, find_roots, Background,
};

fn main() {
    let omega_p = 1.0;
    println!("cold cubic roots (closed-form solver):");
    println!("  wp tau     Re w/wp (pair)      Im w/wp (pair)      third root");
    for tau in [1e-4, 1e-3, 1e-2] {
        let roots = cold_dispersion_roots(omega_p, tau);
        let pos = roots.iter().find(|r| r.re > 0.0).unwrap();
        let third = roots.iter().find(|r| r.im > 0.5 / tau).unwrap();
        let (plus, _, runaway) = cold_asymptotic_roots(omega_p, tau);
        println!(
            "  {tau:7.1e}   {:+.9}   {:+.3e}   {:.6e} i  (asymptote {:.6e} i, pair vs small-tau form {:.1e})",
            pos.re,
            pos.im,
            third.im,
            runaway.im,
            (pos - plus).norm()
        );
    }

    println!();
    println!("Newton root search on the dispersion function + tau-continuation:");
    let tau = 1e-3;
    let bg = Background::Cold { n0: 1.0 };
    for result in find_roots(0.0, &bg, tau, -1.0, 1.0, &default_seeds(omega_p, tau)) {
        match result {
            Ok(root) => {
                let (t_end, w_end) = *root.continuation.last().unwrap();
                println!(
                    "  root {:+.6e} {:+.6e}i  -> {}  (continued to tau = {:.1e}, |w| = {:.3e}, residual {:.1e})",
                    root.omega.re,
                    root.omega.im,
                    root.classification,
                    t_end,
                    w_end.norm(),
                    root.residual
                );
            }
            Err(e) => println!("  seed failed: {e}"),
        }
    }
}
