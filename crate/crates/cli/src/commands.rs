use gsws::model::{potential_mws, potential_ws, MwsParams};
use gsws::resonance::{find_quasibound_with, sample_quasibound, QuasiBoundState, TAIL_CUTOFF};
use gsws::scattering::{find_resonances_with, reflection_transmission_with, sweep_with, SweepAxis};
use gsws::spectrum::{bound_norm, find_bound_states_with, norm_cutoff, sample_bound};

use crate::args::{AxisArg, BoundArgs, PotentialArgs, QuasiboundArgs, ResonancesArgs, ScatterArgs};
use crate::config::RunConfig;
use crate::output::{Cell, Report, Table};
use crate::Failure;

pub(crate) fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

fn check_samples(n: usize, what: &str) -> Result<(), Failure> {
    if n < 2 {
        return Err(Failure::usage(format!("{what} must be at least 2, got {n}")));
    }
    Ok(())
}

pub fn potential(cfg: &RunConfig, args: &PotentialArgs) -> Result<Report, Failure> {
    check_samples(args.samples, "--samples")?;
    if args.x_min.partial_cmp(&args.x_max) != Some(std::cmp::Ordering::Less) {
        return Err(Failure::usage(format!("empty range [{}, {}]", args.x_min, args.x_max)));
    }
    let p = &cfg.params;
    let mws = args
        .mws
        .iter()
        .map(|&(pp, q)| MwsParams::new(p.v0, p.a, p.l, pp, q))
        .collect::<Result<Vec<_>, _>>()?;
    let mut columns = vec!["x_fm".to_string(), "V_gsws_MeV".into(), "V_ws_MeV".into()];
    columns.extend(mws.iter().map(|m| format!("V_mws_p{}_q{}_MeV", m.p, m.q)));
    let mut t = Table::new(columns);
    for x in linspace(args.x_min, args.x_max, args.samples) {
        let mut row = vec![Cell::Num(x), p.potential(x).into(), potential_ws(p, x).into()];
        row.extend(mws.iter().map(|m| Cell::Num(potential_mws(m, x))));
        t.push(row);
    }
    let mut report = Report::new(t);
    if let Ok(hb) = p.barrier_height() {
        report.notes.push(("HB_MeV".into(), hb.to_string()));
    }
    Ok(report)
}

fn axis_column(axis: AxisArg) -> &'static str {
    match axis {
        AxisArg::Energy => "E_MeV",
        AxisArg::V0 => "V0_MeV",
        AxisArg::W0 => "W0_MeV",
        AxisArg::A => "a_fm-1",
        AxisArg::L => "L_fm",
    }
}

pub fn scatter(cfg: &RunConfig, args: &ScatterArgs) -> Result<Report, Failure> {
    let axis: SweepAxis = args.axis.into();
    let (min, max) = match (args.axis, args.min, args.max) {
        (_, Some(lo), Some(hi)) => (lo, hi),
        (AxisArg::Energy, lo, hi) => (lo.unwrap_or(0.1), hi.unwrap_or(80.0)),
        _ => return Err(Failure::usage(format!("--min and --max are required for --axis {}", axis.name()))),
    };
    if args.axis != AxisArg::Energy && args.energy.is_none() {
        return Err(Failure::usage(format!("--energy is required for --axis {}", axis.name())));
    }
    let rows = sweep_with(&cfg.params, axis, (min, max), args.steps, args.energy, cfg.method())?;
    let with_hb = matches!(args.axis, AxisArg::V0 | AxisArg::W0);
    let mut columns = vec![axis_column(args.axis)];
    if args.axis != AxisArg::Energy {
        columns.push("E_MeV");
    }
    columns.extend(["R", "T", "unitarity_defect"]);
    if with_hb {
        columns.push("HB_MeV");
    }
    let mut t = Table::new(columns);
    let mut failed = 0;
    for row in rows {
        if let Some(e) = &row.error {
            failed += 1;
            log::warn!("{}={}: {e}", axis.name(), row.value);
        }
        let mut cells = vec![Cell::Num(row.value)];
        if args.axis != AxisArg::Energy {
            cells.push(row.energy.into());
        }
        cells.extend([row.r.into(), row.t.into(), row.unitarity_defect.into()]);
        if with_hb {
            cells.push(row.hb.into());
        }
        t.push(cells);
    }
    let mut report = Report::new(t);
    report.notes.push(("failed_rows".into(), failed.to_string()));
    Ok(report)
}

fn state_column(index: usize, parity: gsws::Parity, part: &str) -> String {
    format!("n{index}_{parity}_{part}")
}

pub fn bound(cfg: &RunConfig, args: &BoundArgs) -> Result<Report, Failure> {
    let p = &cfg.params;
    let parities = args.parity.parities();
    let states: Vec<_> = find_bound_states_with(p, cfg.method())?
        .into_iter()
        .filter(|s| parities.contains(&s.parity))
        .collect();
    let mut t = Table::new(["index", "label", "parity", "E_MeV", "nodes"]);
    for s in &states {
        t.push(vec![
            s.index.into(),
            s.label.into(),
            Cell::Text(s.parity.to_string()),
            s.energy.into(),
            s.nodes.into(),
        ]);
    }
    let mut report = Report::new(t);
    if args.dump_wavefunctions {
        check_samples(args.x_samples, "--x-samples")?;
        let extent = p.l + 10.0 / p.a;
        let xs = linspace(-extent, extent, args.x_samples);
        let mut columns = vec!["x_fm".to_string()];
        let mut series = Vec::with_capacity(states.len());
        for s in &states {
            let scale = if args.normalize {
                1.0 / bound_norm(p, s, norm_cutoff(p, s.energy))?.sqrt()
            } else {
                1.0
            };
            series.push((sample_bound(p, s, &xs)?, scale));
            columns.push(state_column(s.index, s.parity, "re"));
            columns.push(state_column(s.index, s.parity, "im"));
        }
        report.wavefunctions = Some(wave_table(columns, &xs, &series));
        report.notes.push(("normalized".into(), args.normalize.to_string()));
    }
    Ok(report)
}

fn wave_table(columns: Vec<String>, xs: &[f64], series: &[(Vec<gsws::model::WaveSample>, f64)]) -> Table {
    let mut t = Table::new(columns);
    for (i, &x) in xs.iter().enumerate() {
        let mut row = vec![Cell::Num(x)];
        for (samples, scale) in series {
            row.push(Cell::Num(samples[i].re * scale));
            row.push(Cell::Num(samples[i].im * scale));
        }
        t.push(row);
    }
    t
}

pub fn quasibound(cfg: &RunConfig, args: &QuasiboundArgs) -> Result<Report, Failure> {
    let p = &cfg.params;
    let mut states: Vec<QuasiBoundState> = Vec::new();
    let mut failed = 0;
    for parity in args.parity.parities() {
        let search = find_quasibound_with(p, parity, (args.e_min, args.e_max), cfg.method())?;
        for f in &search.failed {
            log::warn!("{parity} seed {} failed: {}", f.seed, f.reason);
        }
        failed += search.failed.len();
        states.extend(search.states);
    }
    let mut t = Table::new(["index", "parity", "E_r_MeV", "E_i_MeV", "linked_resonance_MeV", "flag"]);
    for s in &states {
        let flag = if s.over_barrier { "over_barrier" } else { "quasi_bound" };
        t.push(vec![
            s.index.into(),
            Cell::Text(s.parity.to_string()),
            s.e_r.into(),
            s.e_i.into(),
            s.linked_resonance.into(),
            Cell::Text(flag.into()),
        ]);
    }
    let mut report = Report::new(t);
    if let Ok(hb) = p.barrier_height() {
        report.notes.push(("HB_MeV".into(), hb.to_string()));
    }
    report.notes.push(("failed_seeds".into(), failed.to_string()));
    if args.dump_wavefunctions {
        check_samples(args.x_samples, "--x-samples")?;
        let extent = p.l + TAIL_CUTOFF / p.a;
        let xs = linspace(-extent, extent, args.x_samples);
        let mut columns = vec!["x_fm".to_string()];
        let mut series = Vec::with_capacity(states.len());
        for s in &states {
            series.push((sample_quasibound(p, s, &xs)?, 1.0));
            columns.push(state_column(s.index, s.parity, "re"));
            columns.push(state_column(s.index, s.parity, "im"));
        }
        report.wavefunctions = Some(wave_table(columns, &xs, &series));
    }
    Ok(report)
}

pub fn resonances(cfg: &RunConfig, args: &ResonancesArgs) -> Result<Report, Failure> {
    let p = &cfg.params;
    let found = find_resonances_with(p, args.e_min, args.e_max, cfg.method())?;
    let mut t = Table::new(["n", "E_MeV", "T", "R"]);
    for (i, &e) in found.iter().enumerate() {
        let rt = reflection_transmission_with(p, e, cfg.method())?;
        t.push(vec![(i + 1).into(), e.into(), rt.t.into(), rt.r.into()]);
    }
    Ok(Report::new(t))
}
