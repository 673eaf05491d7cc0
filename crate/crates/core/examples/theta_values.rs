// Theta functions on a few period matrices: the Riemann theta constant,
// all sixteen characteristics in genus 2, and quasi-periodicity.

use kummer::error::Result;
use kummer::siegel::{random_siegel_point, SiegelPoint};
use kummer::theta::{
    eval_riemann_theta, quasi_periodicity_residual, theta_char, ThetaCharacteristic,
    TruncationPolicy,
};
use num_complex::Complex64;

pub struct ThetaSummary {
    pub theta_i: f64,
    pub radius: u32,
    pub worst_parity: f64,
    pub worst_odd_constant: f64,
    pub worst_quasi_periodicity: f64,
}

pub fn run() -> Result<ThetaSummary> {
    let policy = TruncationPolicy::default();
    let tau = SiegelPoint::diagonal(&[Complex64::new(0.0, 1.0)])?;
    let eval = eval_riemann_theta(&tau, &[Complex64::new(0.0, 0.0)], &policy)?;
    println!(
        "theta(i, 0) = {:.15} (radius {})",
        eval.value.re, eval.radius
    );

    let tau2 = random_siegel_point(2, 1);
    let z = [Complex64::new(0.13, 0.07), Complex64::new(-0.21, 0.11)];
    let neg = [-z[0], -z[1]];
    let zero = [Complex64::new(0.0, 0.0); 2];
    let mut worst_parity: f64 = 0.0;
    let mut worst_odd: f64 = 0.0;
    for m in ThetaCharacteristic::all(2) {
        let sign = if m.is_even() { 1.0 } else { -1.0 };
        let a = theta_char(&m, &tau2, &z, &policy)?;
        let b = theta_char(&m, &tau2, &neg, &policy)?;
        worst_parity = worst_parity.max((b - a * sign).norm());
        let constant = theta_char(&m, &tau2, &zero, &policy)?;
        if !m.is_even() {
            worst_odd = worst_odd.max(constant.norm());
        }
        println!(
            "{m} {} |theta_m(tau, 0)| = {:.3e}",
            if m.is_even() { "even" } else { "odd " },
            constant.norm()
        );
    }

    let mut worst_qp: f64 = 0.0;
    for (m, n) in [([1, 0], [0, 0]), ([0, -2], [1, 1]), ([2, 1], [-2, 0])] {
        worst_qp = worst_qp.max(quasi_periodicity_residual(&tau2, &z, &m, &n, &policy)?);
    }
    println!("parity {worst_parity:.1e}, odd constants {worst_odd:.1e}, quasi-periodicity {worst_qp:.1e}");
    Ok(ThetaSummary {
        theta_i: eval.value.re,
        radius: eval.radius,
        worst_parity,
        worst_odd_constant: worst_odd,
        worst_quasi_periodicity: worst_qp,
    })
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run().map(|_| ())
}
