//! Invariant suites behind `noon-sim verify`.

use std::f64::consts::PI;

use noon_sim::channels::phase_shifter;
use noon_sim::{
    apply_channel, cptp_residual, dilated_mode_map, fit_fringe, ideal_rho00, loss_channel, loss_mode_map,
    simulate_dilation, DensityMatrix, ExperimentConfig, KrausChannel, Pipeline, PureState, Result,
};

const CPTP_TOL: f64 = 1e-10;
const ORACLE_TOL: f64 = 1e-10;
const IDENTITY_TOL: f64 = 1e-12;
const FRINGE_TOL: f64 = 1e-10;

pub struct Check {
    pub group: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Default)]
pub struct Report {
    checks: Vec<Check>,
    notes: Vec<String>,
}

impl Report {
    fn check(&mut self, group: &'static str, pass: bool, detail: String) {
        self.checks.push(Check { group, pass, detail });
    }

    pub fn failures(&self) -> Vec<String> {
        self.checks.iter().filter(|c| !c.pass).map(|c| c.group.to_string()).collect()
    }

    pub fn print(&self) {
        for c in &self.checks {
            println!("{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.group, c.detail);
        }
        for n in &self.notes {
            println!("note: {n}");
        }
    }
}

fn probe_states(pipeline: &Pipeline) -> Result<Vec<DensityMatrix>> {
    let mut states = (0..6).map(DensityMatrix::basis).collect::<Result<Vec<_>>>()?;
    states.push(PureState::noon(0.0).density());
    states.push(PureState::noon(PI / 2.0).density());
    for k in 0..4 {
        states.push(pipeline.stages(k as f64 * PI / 4.0)?.before_lbs);
    }
    Ok(states)
}

pub fn run(cfg: &ExperimentConfig, alpha_reported: Option<f64>) -> Result<Report> {
    let mut report = Report::default();
    let pipeline = Pipeline::new(cfg)?;

    // completeness of every channel the configuration builds
    let output = loss_channel(cfg.output_loss()?)?;
    let phase = phase_shifter(1.0).as_channel();
    let channels: Vec<(&str, &KrausChannel)> = ["input loss", "HOM", "intermediate loss", "beamsplitter"]
        .into_iter()
        .zip(pipeline.channels())
        .chain([("output loss", &output), ("phase", &phase)])
        .collect();
    let (name, worst) =
        channels.iter().map(|(n, ch)| (*n, cptp_residual(ch))).max_by(|a, b| a.1.total_cmp(&b.1)).expect("nonempty");
    report.check("cptp", worst <= CPTP_TOL, format!("worst residual {worst:.2e} ({name})"));

    // Kraus channels against the explicit four-mode dilation
    let states = probe_states(&pipeline)?;
    let lbs_map = dilated_mode_map(cfg.lbs)?;
    let losses = [cfg.input_loss()?, cfg.intermediate_loss()?, cfg.output_loss()?];
    let mut worst = 0.0f64;
    for rho in &states {
        let direct = apply_channel(pipeline.lbs(), rho)?;
        worst = worst.max(direct.max_abs_diff(&simulate_dilation(rho, &lbs_map)));
        for loss in losses {
            let direct = apply_channel(&loss_channel(loss)?, rho)?;
            worst = worst.max(direct.max_abs_diff(&simulate_dilation(rho, &loss_mode_map(loss)?)));
        }
    }
    report.check("oracle", worst <= ORACLE_TOL, format!("max deviation {worst:.2e} over {} states", states.len()));

    // closed-form absorption limits for the configured beamsplitter
    let (alpha, delta) = (cfg.lbs.alpha(), cfg.lbs.delta());
    let rho00 = ideal_rho00(cfg.lbs);
    let identity = (rho00 - (alpha * alpha + delta * delta)).abs();
    let bound = 2.0 * alpha * alpha;
    let pass = identity <= IDENTITY_TOL && rho00 <= bound + IDENTITY_TOL;
    report.check(
        "bounds",
        pass,
        format!("ideal rho00 {rho00:.6} <= 2 alpha^2 {bound:.6}; alpha^2 + delta^2 deviation {identity:.1e}"),
    );
    if alpha > 0.5 {
        report.notes.push(format!("alpha = {alpha:.4} > 1/2, so the 1/2 ceiling does not apply"));
    }

    // two-photon detection probabilities must be pure 2φ fringes
    let phis: Vec<f64> = (0..16).map(|k| k as f64 * PI / 16.0).collect();
    let records = phis.iter().map(|&phi| pipeline.record(phi)).collect::<Result<Vec<_>>>()?;
    type Series = (&'static str, fn(&noon_sim::SweepRecord) -> f64);
    let series: [Series; 4] =
        [("p11", |r| r.probs.p11), ("p20", |r| r.probs.p20), ("p02", |r| r.probs.p02), ("n0", |r| r.amplitudes.n0)];
    let mut worst = (0.0f64, "");
    for (name, f) in series {
        let samples: Vec<_> = records.iter().map(|r| (r.phi, f(r))).collect();
        let residual = fit_fringe(&samples)?.residual;
        if residual >= worst.0 {
            worst = (residual, name);
        }
    }
    report.check("fringe", worst.0 <= FRINGE_TOL, format!("worst fit residual {:.2e} ({})", worst.0, worst.1));

    if let Some(reported) = alpha_reported {
        report.notes.push(format!(
            "absorption from r, t is {alpha:.4}; the configured reported value is {reported:.4} (difference {:+.4})",
            reported - alpha
        ));
    }
    Ok(report)
}
