// Copyright 2026 The icgate Authors
// SPDX-License-Identifier: Apache-2.0

//! Table of quantities derived from a system configuration.

use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::experiments::{analytic_init_delays, cleanup_delay, min_coherence_time, InitDelays};
use crate::spin::{carbon_eigenstructure, dipolar_geometry, DipolarGeometry, Gyromagnetic, SpinSystemConfig};

/// Linewidth (MHz) giving `T₂* ≈ 30 μs`.
pub const DEFAULT_LINEWIDTH_MHZ: f64 = 0.0106;

/// A value, or the reason it cannot be computed for this configuration.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Derived<T> {
    Value(T),
    NotAvailable {
        #[serde(rename = "n/a")]
        reason: String,
    },
}

impl<T> Derived<T> {
    fn from_result(r: Result<T>) -> Self {
        match r {
            Ok(v) => Derived::Value(v),
            Err(e) => Derived::NotAvailable { reason: e.to_string() },
        }
    }

    pub fn value(&self) -> Option<&T> {
        match self {
            Derived::Value(v) => Some(v),
            Derived::NotAvailable { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CarbonReport {
    pub label: u32,
    pub a_zz_mhz: f64,
    pub a_zx_mhz: f64,
    pub kappa_minus_deg: Derived<f64>,
    pub kappa_plus_deg: Derived<f64>,
    pub nu_minus_mhz: Derived<f64>,
    pub nu_plus_mhz: Derived<f64>,
    pub init_delays: Derived<InitDelays>,
    pub cleanup_delay_us: Derived<f64>,
    pub dipolar: Derived<DipolarGeometry>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub nu_c_mhz: f64,
    pub linewidth_mhz: f64,
    pub t2_star_min_us: Derived<f64>,
    pub carbons: Vec<CarbonReport>,
}

fn carbon_report(config: &SpinSystemConfig, index: usize) -> Result<CarbonReport> {
    let single = config.select_carbons(&[index])?;
    let cpl = single.carbons[0];
    let eig = carbon_eigenstructure(&single);
    let field = |f: fn(&crate::spin::CarbonEigenstructure) -> f64| match &eig {
        Ok(e) => Derived::Value(f(e)),
        Err(err) => Derived::NotAvailable { reason: err.to_string() },
    };
    Ok(CarbonReport {
        label: config.carbon_label(index),
        a_zz_mhz: cpl.a_zz,
        a_zx_mhz: cpl.a_zx,
        kappa_minus_deg: field(|e| e.kappa_minus_deg()),
        kappa_plus_deg: field(|e| e.kappa_plus_deg()),
        nu_minus_mhz: field(|e| e.nu_minus),
        nu_plus_mhz: field(|e| e.nu_plus),
        init_delays: Derived::from_result(analytic_init_delays(&single)),
        cleanup_delay_us: Derived::from_result(cleanup_delay(&single)),
        dipolar: Derived::from_result(dipolar_geometry(&cpl, &Gyromagnetic::default())),
    })
}

/// Derived quantities for every carbon of `config`.
pub fn derived_report(config: &SpinSystemConfig, linewidth_mhz: f64) -> Result<Report> {
    config.validate()?;
    let carbons = (0..config.n_carbons()).map(|i| carbon_report(config, i)).collect::<Result<_>>()?;
    Ok(Report {
        nu_c_mhz: config.nu_c,
        linewidth_mhz,
        t2_star_min_us: Derived::from_result(min_coherence_time(linewidth_mhz)),
        carbons,
    })
}

fn cell<T>(d: &Derived<T>, fmt: impl Fn(&T) -> String) -> String {
    match d {
        Derived::Value(v) => fmt(v),
        Derived::NotAvailable { .. } => "n/a".into(),
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "nu_C            {:.4} MHz", self.nu_c_mhz)?;
        writeln!(
            f,
            "T2* bound       {} us (linewidth {} MHz)",
            cell(&self.t2_star_min_us, |v| format!("{v:.2}")),
            self.linewidth_mhz
        )?;
        for c in &self.carbons {
            writeln!(f, "carbon {} (A_zz {} MHz, A_zx {} MHz)", c.label, c.a_zz_mhz, c.a_zx_mhz)?;
            let rows = [
                ("kappa_-", cell(&c.kappa_minus_deg, |v| format!("{v:.2} deg"))),
                ("kappa_+", cell(&c.kappa_plus_deg, |v| format!("{v:.2} deg"))),
                ("nu_-", cell(&c.nu_minus_mhz, |v| format!("{v:.4} MHz"))),
                ("nu_+", cell(&c.nu_plus_mhz, |v| format!("{v:.4} MHz"))),
                ("tau_1", cell(&c.init_delays, |d| format!("{:.3} us", d.tau1_us))),
                ("tau_2", cell(&c.init_delays, |d| format!("{:.3} us", d.tau2_us))),
                ("tau_c", cell(&c.cleanup_delay_us, |v| format!("{v:.3} us"))),
                ("r", cell(&c.dipolar, |g| format!("{:.4} nm", g.r_nm))),
                ("theta", cell(&c.dipolar, |g| format!("{:.2} deg", g.theta_deg))),
            ];
            for (name, value) in rows {
                writeln!(f, "  {name:<14}{value}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paper;
    use crate::spin::HyperfineCoupling;

    #[test]
    fn paper_values() {
        let r = derived_report(&paper::two_qubit_system(), DEFAULT_LINEWIDTH_MHZ).unwrap();
        let c = &r.carbons[0];
        let k = *c.kappa_minus_deg.value().unwrap();
        assert!((86.0..=87.0).contains(&k));
        assert!((c.nu_minus_mhz.value().unwrap() - 0.110).abs() < 1e-3);
        let d = c.init_delays.value().unwrap();
        assert!((d.tau1_us - 2.28).abs() < 0.01 && (d.tau2_us - 1.53).abs() < 0.01);
        let g = c.dipolar.value().unwrap();
        assert!((g.r_nm - 0.8924).abs() < 0.01 && (g.theta_deg - 78.0).abs() < 1.0);
        assert!(r.to_string().contains("tau_1"));
    }

    #[test]
    fn untilted_carbon_reports_na() {
        let cfg = paper::two_qubit_system().with_carbons(vec![HyperfineCoupling::new(-0.152, 0.0)]);
        let r = derived_report(&cfg, DEFAULT_LINEWIDTH_MHZ).unwrap();
        assert_eq!(r.carbons[0].kappa_minus_deg, Derived::Value(0.0));
        assert!(r.carbons[0].init_delays.value().is_none());
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"n/a\""));
        assert!(r.to_string().contains("n/a"));
    }

    #[test]
    fn doubled_linewidth_halves_bound() {
        let cfg = paper::two_qubit_system();
        let a = derived_report(&cfg, 0.01).unwrap();
        let b = derived_report(&cfg, 0.02).unwrap();
        let (a, b) = (a.t2_star_min_us.value().unwrap(), b.t2_star_min_us.value().unwrap());
        assert!((a / b - 2.0).abs() < 1e-12);
    }
}
