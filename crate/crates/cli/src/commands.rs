use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use num_complex::Complex64 as C64;
use serde_json::json;

use spinbath_core::checks::{
    all_pass, ckw_suite, lagrange_suite, tw_sanity_suite, zurek_oracle_suite, CheckResult,
};
use spinbath_core::entanglement::{max_taub_given_tausb, mixed_sharing_bound, sharing_bound};
use spinbath_core::sampler::{audit_inequality_with, frontier_scan, Ensemble};
use spinbath_core::tessieri_wilkie::{free_rabi_sx, tw_sweep, TWConfig};
use spinbath_core::zurek::{
    closed_form_sample, simulate_zurek_exact, zurek_bound, BathKind, ZurekConfig,
};
use spinbath_core::Temperature;

use crate::config::{resolve, resolve_required, ConfigFile};
use crate::manifest::{csv_float, ManifestBuilder};
use crate::{
    BathMode, BoundArgs, EnsembleArg, SampleArgs, Suite, TwArgs, VerifyArgs, ZurekArgs,
    EXIT_ASSERTION,
};

pub fn bound(args: &BoundArgs, config: &ConfigFile) -> Result<u8> {
    let n = resolve_required(args.n, config.usize("n")?, "n")?;
    let tau_b = args.tau_b.or(config.f64("tau-b")?);
    let tau_sb = args.tau_sb.or(config.f64("tau-sb")?);
    let record = match (tau_b, tau_sb) {
        (Some(tau_b), None) => {
            let bound = sharing_bound(tau_b, n)?;
            json!({
                "n": n,
                "input": {"name": "tau_b", "value": tau_b},
                "bound": bound.bound_tau_sb,
                "regime": bound.regime,
                "mixed_bound": mixed_sharing_bound(tau_b, n)?,
            })
        }
        (None, Some(tau_sb)) => {
            let max_tau_b = max_taub_given_tausb(tau_sb, n)?;
            json!({
                "n": n,
                "input": {"name": "tau_sb", "value": tau_sb},
                "bound": max_tau_b,
                "regime": serde_json::Value::Null,
                // convexity carries the same expression over to mixed states
                "mixed_bound": max_tau_b,
            })
        }
        _ => bail!("supply exactly one of --tau-b and --tau-sb"),
    };
    println!("{}", serde_json::to_string_pretty(&record)?);
    Ok(0)
}

fn amplitude_pair(value: f64, name: &str) -> Result<(f64, f64)> {
    if !(0.0..=1.0).contains(&value) {
        bail!("{name} must lie in [0, 1], got {value}");
    }
    Ok((value, (1.0 - value * value).sqrt()))
}

pub fn zurek(args: &ZurekArgs, config: &ConfigFile, out_dir: &Path) -> Result<u8> {
    let mode = match (args.mode, config.string("mode")?) {
        (Some(mode), _) => mode,
        (None, Some(s)) => match s.as_str() {
            "product" => BathMode::Product,
            "entangled" => BathMode::Entangled,
            other => bail!("unknown mode {other:?} in config"),
        },
        (None, None) => bail!("missing required parameter --mode"),
    };
    let n = resolve(args.n, config.usize("n")?, 4);
    let g = resolve(args.g, config.f64("g")?, 1.0);
    if g == 0.0 || !g.is_finite() {
        bail!("coupling g must be finite and nonzero");
    }
    let chi = resolve(args.chi, config.f64("chi")?, 1.0 / 2f64.sqrt());
    let (chi, gamma) = amplitude_pair(chi, "chi")?;
    let bath = match mode {
        BathMode::Product => {
            let alpha = resolve(args.alpha, config.f64("alpha")?, 1.0 / 2f64.sqrt());
            let (alpha, beta) = amplitude_pair(alpha, "alpha")?;
            BathKind::Product {
                alpha: C64::new(alpha, 0.0),
                beta: C64::new(beta, 0.0),
            }
        }
        BathMode::Entangled => {
            let a = resolve(args.a, config.f64("a")?, 0.8f64.sqrt());
            let (a, d) = amplitude_pair(a, "a")?;
            BathKind::Entangled { a, d }
        }
    };
    let cfg = ZurekConfig {
        n_bath: n,
        g,
        chi: C64::new(chi, 0.0),
        gamma: C64::new(gamma, 0.0),
        bath,
    };
    cfg.validate()?;
    let period = std::f64::consts::PI / g.abs();
    let t_max = resolve(args.t_max, config.f64("t-max")?, period);
    let steps = resolve(args.steps, config.usize("steps")?, 200);
    if steps == 0 || t_max < 0.0 {
        bail!("steps must be positive and t-max non-negative");
    }
    let times: Vec<f64> = if steps == 1 {
        vec![0.0]
    } else {
        (0..steps)
            .map(|i| t_max * i as f64 / (steps - 1) as f64)
            .collect()
    };

    let bound = zurek_bound(&cfg)?;
    let simulated = if args.exact_check {
        Some(simulate_zurek_exact(&cfg, &times).context("state-vector cross-check")?)
    } else {
        None
    };

    let mode_name = match mode {
        BathMode::Product => "product",
        BathMode::Entangled => "entangled",
    };
    let mut csv = String::from("t,r2_closed,tau_sb_closed,tau_b,bound");
    if simulated.is_some() {
        csv.push_str(",r2_sim,tau_sb_sim");
    }
    csv.push('\n');
    for (i, &t) in times.iter().enumerate() {
        let closed = closed_form_sample(&cfg, t)?;
        csv.push_str(&format!(
            "{},{},{},{},{}",
            csv_float(t),
            csv_float(closed.r2),
            csv_float(closed.tau_sb),
            csv_float(closed.tau_b),
            csv_float(bound),
        ));
        if let Some(sim) = &simulated {
            csv.push_str(&format!(",{},{}", csv_float(sim[i].r2), csv_float(sim[i].tau_sb)));
        }
        csv.push('\n');
    }

    let parameters = json!({
        "mode": mode_name,
        "n": n,
        "g": g,
        "chi": chi,
        "gamma": gamma,
        "bath": match cfg.bath {
            BathKind::Product { alpha, beta } => json!({"alpha": alpha.re, "beta": beta.re}),
            BathKind::Entangled { a, d } => json!({"a": a, "d": d}),
        },
        "t_max": t_max,
        "steps": steps,
        "exact_check": args.exact_check,
    });
    let mut manifest = ManifestBuilder::new(
        &format!("zurek_{mode_name}"),
        out_dir,
        parameters,
        None,
    );
    let path = manifest.write_output(&format!("zurek_{mode_name}.csv"), &csv)?;
    manifest.finish()?;
    eprintln!("wrote {}", path.display());
    Ok(0)
}

fn lambda_tag(lambda: f64) -> String {
    format!("{lambda}").replace('.', "p").replace('-', "m")
}

pub fn tw(args: &TwArgs, config: &ConfigFile, out_dir: &Path) -> Result<u8> {
    let kt_text = resolve(args.kt.clone(), config.string("kt")?, "0.1".into());
    let kt_value: f64 = kt_text
        .parse()
        .map_err(|_| anyhow!("cannot parse --kt value {kt_text:?}"))?;
    let kt = Temperature::from_kt(kt_value)?;
    let cfg = TWConfig {
        n_bath: resolve(args.n, config.usize("n")?, 6),
        omega0: resolve(args.omega0, config.f64("omega0")?, 0.8288),
        omega_i: resolve(args.omega_i, config.f64("omega-i")?, 1.0),
        beta: resolve(args.beta, config.f64("beta")?, 0.01),
        lambda0: resolve(args.lambda0, config.f64("lambda0")?, 1.0),
        lambda: 0.0,
        kt,
        time_max: resolve(args.t_max, config.f64("t-max")?, 30.0),
        n_steps: resolve(args.steps, config.usize("steps")?, 200),
    };
    cfg.validate()?;
    let lambdas = if args.lambdas.is_empty() {
        config
            .f64_list("lambda")?
            .unwrap_or_else(|| vec![0.0, 1.0, 5.0])
    } else {
        args.lambdas.clone()
    };

    let rows = tw_sweep(&cfg, &lambdas)?;

    let parameters = json!({
        "n": cfg.n_bath,
        "omega0": cfg.omega0,
        "omega_i": cfg.omega_i,
        "beta": cfg.beta,
        "lambda0": cfg.lambda0,
        "lambda": lambdas,
        "kt": kt_value,
        "t_max": cfg.time_max,
        "steps": cfg.n_steps,
    });
    let mut manifest = ManifestBuilder::new("tw", out_dir, parameters.clone(), None);
    for row in &rows {
        let mut csv = String::from("t,sx,sx_free,tau_b,entropy\n");
        let traj = &row.trajectory;
        for (i, &t) in traj.times.iter().enumerate() {
            csv.push_str(&format!(
                "{},{},{},{},{}\n",
                csv_float(t),
                csv_float(traj.sx_central[i]),
                csv_float(free_rabi_sx(cfg.omega0, cfg.beta, t)),
                csv_float(traj.tau_b[i]),
                csv_float(traj.entropy_central[i]),
            ));
        }
        manifest.write_output(&format!("tw_lambda_{}.csv", lambda_tag(row.lambda)), &csv)?;
    }

    let summary = json!({
        "parameters": parameters,
        "rows": rows.iter().map(|row| json!({
            "lambda": row.lambda,
            "initial_tau_b": row.initial_tau_b,
            "fidelity": row.fidelity,
        })).collect::<Vec<_>>(),
    });
    let summary_text = serde_json::to_string_pretty(&summary)?;
    manifest.write_output("tw_summary.json", &summary_text)?;
    manifest.finish()?;
    println!("{summary_text}");
    Ok(0)
}

pub fn sample(args: &SampleArgs, config: &ConfigFile, out_dir: &Path) -> Result<u8> {
    let n = resolve(args.n, config.usize("n")?, 3);
    let samples = resolve(args.samples, config.u64("samples")?, 100_000);
    let seed = resolve(args.seed, config.u64("seed")?, 0);
    let tolerance = resolve(args.tolerance, config.f64("tolerance")?, 1e-9);
    let ensemble = match resolve(
        args.ensemble,
        match config.string("ensemble")?.as_deref() {
            None => None,
            Some("symmetric") => Some(EnsembleArg::Symmetric),
            Some("singlet") => Some(EnsembleArg::Singlet),
            Some(other) => bail!("unknown ensemble {other:?} in config"),
        },
        EnsembleArg::Symmetric,
    ) {
        EnsembleArg::Symmetric => Ensemble::Symmetric,
        EnsembleArg::Singlet => Ensemble::SingletN2,
    };
    let workers = args.workers.or(config.usize("workers")?).or_else(|| {
        std::env::var("SPINBATH_WORKERS")
            .ok()
            .and_then(|s| s.parse().ok())
    });

    let pool = {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(workers) = workers {
            if workers == 0 {
                bail!("--workers must be positive");
            }
            builder = builder.num_threads(workers);
        }
        builder.build().context("building worker pool")?
    };

    let audit =
        pool.install(|| audit_inequality_with(n, samples, seed, tolerance, ensemble))?;
    let audit_text = serde_json::to_string_pretty(&audit)?;

    let parameters = json!({
        "n": n,
        "samples": samples,
        "seed": seed,
        "tolerance": tolerance,
        "ensemble": ensemble,
        "frontier": args.frontier,
    });
    let mut manifest = ManifestBuilder::new("sample", out_dir, parameters, Some(seed));
    manifest.write_output("audit.json", &audit_text)?;
    if args.frontier {
        if ensemble != Ensemble::Symmetric {
            bail!("--frontier applies to the symmetric ensemble only");
        }
        let bins = pool.install(|| frontier_scan(n, samples, seed))?;
        let mut csv = String::from("bin_center,max_tau_sb,bound\n");
        for bin in &bins {
            csv.push_str(&format!(
                "{},{},{}\n",
                csv_float(bin.center),
                csv_float(bin.max_tau_sb),
                csv_float(bin.bound),
            ));
        }
        manifest.write_output("frontier.csv", &csv)?;
    }
    manifest.finish()?;
    println!("{audit_text}");
    Ok(0)
}

pub fn verify(args: &VerifyArgs) -> Result<u8> {
    let mut suites: Vec<(&str, Vec<CheckResult>)> = Vec::new();
    let wants = |s: Suite| args.suite == s || args.suite == Suite::All;
    if wants(Suite::Ckw) {
        suites.push(("ckw", ckw_suite(10_000, 60221023)?));
    }
    if wants(Suite::Lagrange) {
        suites.push(("lagrange", lagrange_suite(100_000)?));
    }
    if wants(Suite::ZurekOracle) {
        suites.push(("zurek-oracle", zurek_oracle_suite()?));
    }
    if wants(Suite::TwSanity) {
        suites.push((
            "tw-sanity",
            tw_sanity_suite(&TWConfig::default(), &[0.0, 1.0, 5.0])?,
        ));
    }
    let passed = suites.iter().all(|(_, checks)| all_pass(checks));
    let report = json!({
        "passed": passed,
        "suites": suites.iter().map(|(name, checks)| json!({
            "name": name,
            "passed": all_pass(checks),
            "checks": checks,
        })).collect::<Vec<_>>(),
    });
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(if passed { 0 } else { EXIT_ASSERTION })
}
