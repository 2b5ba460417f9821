use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use tilecheck::aabb::Aabb;
use tilecheck::autocorr::{autocorrelation, check_overlap_lemma, LemmaStatus, ZeroComponent};
use tilecheck::constructions::{
    build_checkerboard_tiling, build_e_1d_example, build_e_3d, build_near_square_2d, enumerate_lattice_configs,
    lift_to_dim, NearCube3DParams, Profile,
};
use tilecheck::extraction::extract_lattice_2d;
use tilecheck::io::{
    format_window, parse_window, PiecewiseLinearJson, PolyBoxJson, SpectrumJson, TranslationSystemJson,
};
use tilecheck::lattice::TranslationSystem;
use tilecheck::polybox::PolyBox;
use tilecheck::rational::{format_rational, format_vector, int, parse_rational, to_f64, Rational};
use tilecheck::spectral::{
    completeness_check, fejer_ft, fejer_partition_check, ft_indicator_rational, ft_zero_exact, orthogonality_check,
    FejerParams,
};
use tilecheck::tiling::{complete_tiling_1d, is_packing, is_tiling, Completion, CompletionFailure, Decision, Witness};

use crate::report::{FileDigest, Status};
use crate::svg;
use crate::{BoolOp, Build, Command, ProfileKind, SystemArgs};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] tilecheck::Error),
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
}

pub struct Outcome {
    pub status: Status,
    pub result: Value,
}

impl Outcome {
    fn new(status: Status, result: Value) -> Self {
        Outcome { status, result }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Files read and written during one invocation.
#[derive(Default)]
pub struct Context {
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
}

impl Context {
    fn read_json<T: DeserializeOwned>(&mut self, path: &Path) -> CliResult<T> {
        let bytes = std::fs::read(path).map_err(|e| io_error(path, e))?;
        self.inputs.push(FileDigest::of(path, &bytes));
        serde_json::from_slice(&bytes).map_err(|e| CliError::Io {
            path: path.to_path_buf(),
            message: format!("malformed JSON: {e}"),
        })
    }

    fn read_set(&mut self, path: &Path) -> CliResult<PolyBox> {
        Ok(self.read_json::<PolyBoxJson>(path)?.to_polybox()?)
    }

    fn read_system(&mut self, path: &Path) -> CliResult<TranslationSystem> {
        Ok(self.read_json::<TranslationSystemJson>(path)?.to_system()?)
    }

    fn write_bytes(&mut self, path: &Path, bytes: &[u8]) -> CliResult<()> {
        std::fs::write(path, bytes).map_err(|e| io_error(path, e))?;
        self.outputs.push(FileDigest::of(path, bytes));
        Ok(())
    }

    fn write_json<T: Serialize>(&mut self, path: &Path, value: &T) -> CliResult<()> {
        let mut text = serde_json::to_string_pretty(value).expect("plain JSON");
        text.push('\n');
        self.write_bytes(path, text.as_bytes())
    }
}

fn io_error(path: &Path, e: std::io::Error) -> CliError {
    CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    }
}

fn r(x: &Rational) -> String {
    format_rational(x)
}

fn parse(s: &str) -> CliResult<Rational> {
    Ok(parse_rational(s)?)
}

fn witness_json(w: &Option<Witness>) -> Value {
    match w {
        Some(w) => json!({ "cell": format_window(&w.cell), "count": w.count }),
        None => Value::Null,
    }
}

fn decision_json(d: &Decision, system: &TranslationSystem) -> Value {
    let m = &d.report;
    json!({
        "holds": d.holds,
        "verdict": m.verdict,
        "window": format_window(&m.window),
        "witness": witness_json(&d.witness),
        "cell_count": m.cell_count(),
        "translations": m.translations.len(),
        "coefficient_bounds": m.coefficient_bounds,
        "mass": {
            "cells": r(&m.cell_mass),
            "translates": r(&m.translate_mass),
            "conserved": m.mass_conserved(),
        },
        "extends_globally": m.extends_globally(system),
    })
}

fn zeros_json(zeros: &[ZeroComponent]) -> Value {
    zeros
        .iter()
        .map(|z| {
            json!({
                "lo": r(&z.lo),
                "hi": r(&z.hi),
                "lo_closed": z.lo_closed,
                "hi_closed": z.hi_closed,
            })
        })
        .collect()
}

/// Low-discrepancy points in `[-range, range]`.
fn sample_points(n: usize, range: f64) -> Vec<f64> {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    (1..=n).map(|k| range * (2.0 * (k as f64 * phi).fract() - 1.0)).collect()
}

pub fn run(command: Command, ctx: &mut Context) -> CliResult<Outcome> {
    match command {
        Command::Measure { set } => {
            let e = ctx.read_set(&set)?;
            let bbox = if e.is_empty() { Value::Null } else { json!(format_window(&e.bounding_box()?)) };
            Ok(Outcome::new(
                Status::True,
                json!({ "dim": e.dim(), "measure": r(&e.measure()), "boxes": e.boxes().len(), "bounding_box": bbox }),
            ))
        }
        Command::Boolean { op, a, b, out } => {
            let (a, b) = (ctx.read_set(&a)?, ctx.read_set(&b)?);
            let c = match op {
                BoolOp::Union => a.union(&b)?,
                BoolOp::Intersect => a.intersect(&b)?,
                BoolOp::Difference => a.difference(&b)?,
                BoolOp::SymmDiff => a.symm_diff(&b)?,
            };
            let dto = PolyBoxJson::from(&c);
            if let Some(path) = out {
                ctx.write_json(&path, &dto)?;
            }
            Ok(Outcome::new(Status::True, json!({ "measure": r(&c.measure()), "set": dto })))
        }
        Command::TilingCheck(args) => system_check(args, ctx, true),
        Command::PackingCheck(args) => system_check(args, ctx, false),
        Command::Complete1d { set, window, max_steps, out } => {
            let e = ctx.read_set(&set)?;
            let w = parse_window(&window)?;
            match complete_tiling_1d(&e, &w, max_steps)? {
                Completion::Complete(system) => {
                    let dto = TranslationSystemJson::from(&system);
                    if let Some(path) = out {
                        ctx.write_json(&path, &dto)?;
                    }
                    let verified = is_tiling(&e, &system, &w)?;
                    Ok(Outcome::new(
                        Status::from_bool(verified.holds),
                        json!({ "complete": true, "translations": dto.reps, "tiling_verified": verified.holds }),
                    ))
                }
                Completion::Failed { point, reason, placed } => {
                    let reason = match reason {
                        CompletionFailure::NoFit => json!("no-fit"),
                        CompletionFailure::Ambiguous(c) => json!({ "ambiguous": format_vector(&c) }),
                        CompletionFailure::StepLimit => json!("step-limit"),
                    };
                    Ok(Outcome::new(
                        Status::False,
                        json!({ "complete": false, "uncovered_point": r(&point), "reason": reason, "placed": format_vector(&placed) }),
                    ))
                }
            }
        }
        Command::Autocorr { set, out, svg } => {
            let e = ctx.read_set(&set)?;
            let g = autocorrelation(&e)?;
            let dto = PiecewiseLinearJson::from(&g);
            if let Some(path) = out {
                ctx.write_json(&path, &dto)?;
            }
            if let Some(path) = svg {
                ctx.write_bytes(&path, svg::render_graph(&g).as_bytes())?;
            }
            Ok(Outcome::new(Status::True, json!({ "autocorrelation": dto, "integral": r(&g.integral()) })))
        }
        Command::OverlapLemma { set } => {
            let e = ctx.read_set(&set)?;
            let rep = check_overlap_lemma(&e)?;
            let status = match rep.status {
                LemmaStatus::Holds => Status::True,
                LemmaStatus::Fails => Status::False,
                LemmaStatus::HypothesisViolation => Status::HypothesisViolation,
            };
            Ok(Outcome::new(
                status,
                json!({
                    "measure": r(&rep.measure),
                    "hull": [r(&rep.hull.0), r(&rep.hull.1)],
                    "epsilon": r(&rep.epsilon),
                    "measure_ok": rep.measure_ok,
                    "length_ok": rep.length_ok,
                    "zeros_in_unit_interval": zeros_json(&rep.zeros),
                }),
            ))
        }
        Command::FtZero { set, xi } => {
            let e = ctx.read_set(&set)?;
            let xi = parse(&xi)?;
            let zero = ft_zero_exact(&e, &xi)?;
            let value = ft_indicator_rational(&e, &xi)?;
            Ok(Outcome::new(
                Status::from_bool(zero),
                json!({ "xi": r(&xi), "zero": zero, "value": [value.re, value.im], "abs": value.norm() }),
            ))
        }
        Command::SpectrumCheck { set, spectrum, samples, range, truncation, tol } => {
            let e = ctx.read_set(&set)?;
            let sp = ctx.read_json::<SpectrumJson>(&spectrum)?.to_spectrum()?;
            let orth = orthogonality_check(&e, &sp)?;
            let points = sample_points(samples, range);
            let comp = completeness_check(&e, &sp, &points, truncation, tol)?;
            let checks: Vec<Value> = orth
                .checks
                .iter()
                .map(|c| {
                    json!({
                        "rep_difference": r(&c.rep_difference),
                        "residue": c.residue,
                        "frequency": r(&c.frequency),
                        "root_order": c.order.to_string(),
                        "vanishes": c.vanishes,
                    })
                })
                .collect();
            let worst = comp
                .samples
                .iter()
                .max_by(|a, b| a.deviation.total_cmp(&b.deviation))
                .map(|s| json!({ "xi": s.xi, "partial": s.partial, "tail": s.tail, "deviation": s.deviation }));
            Ok(Outcome::new(
                Status::from_bool(orth.orthogonal && comp.pass),
                json!({
                    "density": r(&sp.density()),
                    "orthogonality": {
                        "pass": orth.orthogonal,
                        "pattern_period": orth.pattern_period,
                        "residue_classes": checks,
                        "witness": orth.witness.as_ref().map(r),
                    },
                    "completeness": {
                        "pass": comp.pass,
                        "target": comp.target,
                        "samples": comp.samples.len(),
                        "truncation": comp.truncation,
                        "tol": comp.tol,
                        "worst_deviation": comp.worst_deviation,
                        "worst_sample": worst,
                        "tail_bound": comp.tail_bound,
                        "tail_uncertainty": comp.tail_uncertainty,
                        "bound_check": comp.bound_check,
                        "corrected_check": comp.corrected_check,
                    },
                }),
            ))
        }
        Command::Fejer { delta, samples, range, truncation, tol } => {
            let delta = parse(&delta)?;
            let p = FejerParams::new(delta.clone())?;
            let d = to_f64(&delta);
            let at_zero = fejer_ft(&p, 0.0);
            let zero_ok = (at_zero - 1.0 / (1.0 + d)).abs() < 1e-12;
            let worst_lattice = (-10i32..=10)
                .filter(|k| *k != 0)
                .map(|k| fejer_ft(&p, (1.0 + d) * k as f64).abs())
                .fold(0.0, f64::max);
            let points = sample_points(samples, range);
            let part = fejer_partition_check(&p, truncation, &points, tol)?;
            let pass = zero_ok && worst_lattice < 1e-12 && part.pass;
            Ok(Outcome::new(
                Status::from_bool(pass),
                json!({
                    "delta": r(&delta),
                    "ft_at_zero": at_zero,
                    "expected_at_zero": r(&(int(1) / (int(1) + &delta))),
                    "max_abs_at_nonzero_lattice": worst_lattice,
                    "partition": {
                        "pass": part.pass,
                        "samples": part.samples.len(),
                        "truncation": part.truncation,
                        "tol": part.tol,
                        "worst_deviation": part.worst_deviation,
                        "tail_bound": part.tail_bound,
                        "tail_uncertainty": part.tail_uncertainty,
                    },
                }),
            ))
        }
        Command::Build(b) => build(b, ctx),
        Command::VerifyTheorem3d { epsilon, dim } => verify_theorem3d(&parse(&epsilon)?, dim),
        Command::ExtractLattice2d { set, patch } => {
            let e = ctx.read_set(&set)?;
            let patch = ctx.read_system(&patch)?;
            if patch.lattice().is_some() {
                return Err(CliError::Usage("the patch must be a finite translation set".into()));
            }
            match extract_lattice_2d(&e, patch.reps()) {
                Ok(x) => Ok(Outcome::new(
                    Status::from_bool(x.decision.holds),
                    json!({
                        "epsilon": r(&x.epsilon),
                        "base": format_vector(&x.base),
                        "reflection": x.reflection,
                        "u": format_vector(&x.u),
                        "v": format_vector(&x.v),
                        "w": format_vector(&x.w),
                        "w_equals_u_plus_v": true,
                        "lattice_tiling": decision_json(&x.decision, &TranslationSystem::lattice_only(x.lattice.clone())),
                    }),
                )),
                Err(tilecheck::Error::ExtractionCounterexample { w, sum }) => Ok(Outcome::new(
                    Status::False,
                    json!({ "counterexample": { "w": format_vector(&w), "u_plus_v": format_vector(&sum) } }),
                )),
                Err(tilecheck::Error::NoCorner) => Ok(Outcome::new(Status::False, json!({ "no_corner": true }))),
                Err(tilecheck::Error::Hypothesis(h)) => {
                    Ok(Outcome::new(Status::HypothesisViolation, json!({ "hypothesis": h })))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::RenderSlice { set, axis, level, out } => {
            let e = ctx.read_set(&set)?;
            let (planar, frame) = match e.dim() {
                2 => {
                    let bb = e.bounding_box()?;
                    (e, bb)
                }
                3 => {
                    if axis > 2 {
                        return Err(CliError::Usage(format!("axis {axis} out of range for a 3D set")));
                    }
                    let level = parse(level.as_deref().ok_or_else(|| CliError::Usage("--level is required for 3D sets".into()))?)?;
                    let bb = e.bounding_box()?;
                    let (lo, hi) = bb.interval(axis);
                    if level < *lo || level > *hi {
                        return Err(CliError::Usage(format!("level {} outside [{}, {}]", r(&level), r(lo), r(hi))));
                    }
                    (e.slice(axis, &level)?, bb.project_out(axis))
                }
                d => return Err(CliError::Usage(format!("render-slice needs a 2D or 3D set, got dimension {d}"))),
            };
            let doc = svg::render_boxes(&planar, &frame);
            ctx.write_bytes(&out, doc.as_bytes())?;
            Ok(Outcome::new(
                Status::True,
                json!({ "rectangles": planar.boxes().len(), "area": r(&planar.measure()), "frame": format_window(&frame) }),
            ))
        }
    }
}

fn system_check(args: SystemArgs, ctx: &mut Context, tiling: bool) -> CliResult<Outcome> {
    let e = ctx.read_set(&args.set)?;
    let system = ctx.read_system(&args.system)?;
    let w = parse_window(&args.window)?;
    let d = if tiling { is_tiling(&e, &system, &w)? } else { is_packing(&e, &system, &w)? };
    Ok(Outcome::new(Status::from_bool(d.holds), decision_json(&d, &system)))
}

fn build(b: Build, ctx: &mut Context) -> CliResult<Outcome> {
    match b {
        Build::Counterexample3d { epsilon, out, manifest } => {
            let (e, m) = build_e_3d(&NearCube3DParams::new(parse(&epsilon)?)?);
            ctx.write_json(&out, &PolyBoxJson::from(&e))?;
            if let Some(path) = manifest {
                ctx.write_json(&path, &m)?;
            }
            Ok(Outcome::new(Status::True, json!({ "measure": r(&e.measure()), "boxes": e.boxes().len(), "manifest": m })))
        }
        Build::Example1d { out } => {
            let e = build_e_1d_example();
            ctx.write_json(&out, &PolyBoxJson::from(&e))?;
            Ok(Outcome::new(Status::True, json!({ "measure": r(&e.measure()) })))
        }
        Build::Checkerboard { out } => {
            let (system, columns) = build_checkerboard_tiling(1)?;
            ctx.write_json(&out, &TranslationSystemJson::from(&system))?;
            Ok(Outcome::new(
                Status::True,
                json!({ "reps": system.reps().len(), "covolume": r(&columns.periods.covolume()) }),
            ))
        }
        Build::LatticeConfig { index, t, out } => {
            let configs = enumerate_lattice_configs(&parse(&t)?);
            let c = &configs[index as usize - 1];
            ctx.write_json(&out, &TranslationSystemJson::from(&c.system()))?;
            let m: Vec<Vec<String>> = c.matrix.iter().map(|row| format_vector(row)).collect();
            Ok(Outcome::new(Status::True, json!({ "index": c.index, "offsets": m })))
        }
        Build::NearSquare { epsilon, profile, seed, steps, out, patch } => {
            let profile = match profile {
                ProfileKind::Trivial => Profile::Trivial,
                ProfileKind::ShiftedRows => Profile::ShiftedRows(seed),
                ProfileKind::Bumps => Profile::Bumps(seed),
                ProfileKind::Staircase => Profile::Staircase(steps),
            };
            let inst = build_near_square_2d(&parse(&epsilon)?, profile)?;
            ctx.write_json(&out, &PolyBoxJson::from(&inst.set))?;
            let patch_system = TranslationSystem::finite(2, inst.patch.clone())?;
            ctx.write_json(&patch, &TranslationSystemJson::from(&patch_system))?;
            Ok(Outcome::new(
                Status::True,
                json!({ "measure": r(&inst.set.measure()), "boxes": inst.set.boxes().len(), "patch_size": inst.patch.len() }),
            ))
        }
        Build::Lift { set, dim, out } => {
            let e = ctx.read_set(&set)?;
            let lifted = lift_to_dim(&e, dim)?;
            ctx.write_json(&out, &PolyBoxJson::from(&lifted))?;
            Ok(Outcome::new(Status::True, json!({ "dim": dim, "measure": r(&lifted.measure()) })))
        }
    }
}

fn verify_theorem3d(eps: &Rational, dim: usize) -> CliResult<Outcome> {
    let (e3, _) = build_e_3d(&NearCube3DParams::new(eps.clone())?);
    let e = lift_to_dim(&e3, dim)?;
    let extra = dim - 3;
    let mut hi = vec![int(2), int(2), int(1)];
    hi.extend(std::iter::repeat_n(int(1), extra));
    let window = Aabb::new(vec![int(0); dim], hi)?;

    let (checker, _) = build_checkerboard_tiling(1)?;
    let checker = checker.lift(extra);
    let positive = is_tiling(&e, &checker, &window)?;

    let mut configs = Vec::new();
    let mut all_fail = true;
    for c in enumerate_lattice_configs(&tilecheck::rational::rat(1, 4)) {
        let system = c.system().lift(extra);
        let d = is_tiling(&e, &system, &window)?;
        all_fail &= !d.holds;
        configs.push(json!({
            "index": c.index,
            "offsets": c.matrix.iter().map(|row| format_vector(row)).collect::<Vec<_>>(),
            "tiles": d.holds,
            "witness": witness_json(&d.witness),
            "verdict": d.report.verdict,
        }));
    }
    Ok(Outcome::new(
        Status::from_bool(positive.holds && all_fail),
        json!({
            "epsilon": r(eps),
            "dim": dim,
            "measure": r(&e.measure()),
            "checkerboard": decision_json(&positive, &checker),
            "lattice_configs": configs,
            "all_lattice_configs_fail": all_fail,
        }),
    ))
}
