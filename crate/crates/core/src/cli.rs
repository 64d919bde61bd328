//! Command-line front end. Every command prints `key=value` lines; errors go
//! to stderr as one JSON object and select the exit code.

use std::ffi::OsString;
use std::fmt::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::betti::{betti_rb, betti_rb_vnrv, betti_rbnrv, betti_rbnrv_vnrv, betti_rbx, betti_triple, Structure};
use crate::cw::validate_cw;
use crate::division::verify_partition;
use crate::document::{parse_document, Document, Target, Workspace};
use crate::error::{Error, EXIT_OK, EXIT_SCHEMA, EXIT_VALIDATION};
use crate::geometry::{format_rational, parse_decimal, parse_rational, Rational};
use crate::homology::nerve_theorem_check;
use crate::nerve::{nerve, ribbon_nerve, Region, MAX_NERVE_REGIONS};
use crate::proximity::{distance_squared, select_probes, Threshold};
use crate::ribbon::{Ribbon, RibbonComplex};
use crate::svg::render_svg;

#[derive(Debug, Parser)]
#[command(name = "ribbon", version, about = "Planar ribbons, nerves, Betti counters and descriptive proximity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the CW conditions of every complex; exit 0 iff all are valid.
    Validate { file: PathBuf },
    /// Print every Betti counter that applies to the target.
    Betti {
        file: PathBuf,
        #[arg(long)]
        target: String,
    },
    /// Print maximal ribbon-nerve groups and nerve simplices of ribbon complexes.
    Nerve {
        file: PathBuf,
        #[arg(long)]
        target: Option<String>,
    },
    /// Decide approximate descriptive nearness of two entities.
    Near {
        file: PathBuf,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Comma-separated probe names; defaults to the document's selection.
        #[arg(long, value_delimiter = ',')]
        probes: Option<Vec<String>>,
        /// Positive threshold as `num/den` or a decimal; defaults to the document's.
        #[arg(long)]
        th: Option<String>,
    },
    /// Sample the three-region division of the frame by a ribbon.
    Divide {
        file: PathBuf,
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 40)]
        grid: usize,
    },
    /// Compare nerve and union homology ranks of convex families; exit 0 iff all agree.
    Nervecheck {
        file: PathBuf,
        #[arg(long, default_value_t = 16)]
        resolution: u32,
        #[arg(long)]
        target: Option<String>,
    },
    /// Draw the target as SVG.
    Render {
        file: PathBuf,
        #[arg(long)]
        target: String,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Rewrite a document in canonical form.
    Fmt { file: PathBuf },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn load(path: &PathBuf) -> Result<Document, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })?;
    Ok(parse_document(&text)?)
}

fn workspace(path: &PathBuf) -> Result<Workspace, Error> {
    load(path)?.resolve()
}

fn parse_threshold(text: &str) -> Result<Rational, Error> {
    parse_rational(text).or_else(|_| parse_decimal(text)).map_err(|_| Error::Usage(format!("bad threshold `{text}`")))
}

fn line(out: &mut String, key: impl std::fmt::Display, value: impl std::fmt::Display) {
    let _ = writeln!(out, "{key}={value}");
}

fn validate(path: &PathBuf, out: &mut String) -> Result<i32, Error> {
    let ws = workspace(path)?;
    let mut ok = !ws.complexes.is_empty();
    line(out, "complexes", ws.complexes.len());
    for (name, c) in &ws.complexes {
        let report = validate_cw(&c.complex);
        line(out, format!("{name}.cells"), c.complex.cells().len());
        for v in &report.containment {
            line(out, format!("{name}.missing_face"), format!("{} of {}", v.missing_face, v.cell));
        }
        for v in &report.unplaced {
            line(out, format!("{name}.unplaced"), v);
        }
        for v in &report.intersection {
            line(out, format!("{name}.bad_intersection"), format!("{} {}", v.first, v.second));
        }
        line(out, format!("{name}.valid"), report.is_valid());
        ok &= report.is_valid();
    }
    line(out, "valid", ok);
    Ok(if ok { EXIT_OK } else { EXIT_VALIDATION })
}

fn betti(path: &PathBuf, target: &str, out: &mut String) -> Result<i32, Error> {
    let ws = workspace(path)?;
    let t = ws.find(target)?;
    let structure = match t {
        Target::Ribbon(_, r) => Structure::Ribbon(r),
        Target::RibbonComplex(_, x) => Structure::RibbonComplex(x),
        Target::RibbonNerve(_, n) => Structure::RibbonNerve(n),
        Target::VortexNerve(_, v) => Structure::VortexNerve(v),
        other => return Err(Error::WrongTargetKind { name: target.to_string(), kind: other.kind() }),
    };
    line(out, "target", target);
    line(out, "kind", t.kind());
    let triple = betti_triple(structure);
    line(out, "b0", triple.b0);
    line(out, "b1", triple.b1);
    line(out, "b2", triple.b2);
    match t {
        Target::Ribbon(_, r) => line(out, "betti_rb", betti_rb(r)),
        Target::RibbonComplex(_, x) => {
            let b = betti_rbx(x);
            line(out, "betti_rbx_count", b.count_variant);
            line(out, "betti_rbx_sum", b.sum_variant);
        }
        Target::RibbonNerve(_, n) => line(out, "betti_rbnrv", betti_rbnrv(n)),
        Target::VortexNerve(_, v) => {
            let k = v.cycles().len();
            line(out, "ribbons", k.saturating_sub(1));
            line(out, "ribbon_nerves", k.saturating_sub(2));
            if k >= 2 {
                line(out, "betti_rb_vnrv", betti_rb_vnrv(v)?);
            }
            if k >= 3 {
                line(out, "betti_rbnrv_vnrv", betti_rbnrv_vnrv(v)?);
            }
        }
        _ => {}
    }
    Ok(EXIT_OK)
}

fn labels(ribbons: &[Ribbon]) -> String {
    ribbons.iter().map(Ribbon::label).collect::<Vec<_>>().join(",")
}

fn nerve_of(x: &RibbonComplex, out: &mut String) -> Result<(), Error> {
    let name = x.label();
    for (i, group) in ribbon_nerve(x).iter().enumerate() {
        line(out, format!("{name}.group{i}"), labels(group.ribbons()));
    }
    if x.ribbons().len() <= MAX_NERVE_REGIONS {
        let regions: Vec<Region> = x.ribbons().iter().map(Ribbon::region).collect();
        let sc = nerve(&regions)?;
        line(out, format!("{name}.nerve_dimension"), sc.dimension().unwrap_or(0));
        let simplices: Vec<String> = sc
            .simplices
            .iter()
            .map(|s| format!("{{{}}}", s.iter().map(|&i| sc.vertex_labels[i].as_str()).collect::<Vec<_>>().join(",")))
            .collect();
        line(out, format!("{name}.nerve_simplices"), simplices.join(" "));
    }
    Ok(())
}

fn nerve_cmd(path: &PathBuf, target: Option<&str>, out: &mut String) -> Result<i32, Error> {
    let ws = workspace(path)?;
    match target {
        Some(t) => match ws.find(t)? {
            Target::RibbonComplex(_, x) => nerve_of(x, out)?,
            other => return Err(Error::WrongTargetKind { name: t.to_string(), kind: other.kind() }),
        },
        None => {
            for c in ws.complexes.values() {
                for x in c.ribbon_complexes.values() {
                    nerve_of(x, out)?;
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn near(
    path: &PathBuf,
    a: &str,
    b: &str,
    probes: Option<Vec<String>>,
    th: Option<String>,
    out: &mut String,
) -> Result<i32, Error> {
    let doc = load(path)?;
    let ws = doc.resolve()?;
    let names = probes.or(doc.probes.clone()).ok_or_else(|| Error::Usage("no probes given".into()))?;
    let th = match th {
        Some(t) => parse_threshold(&t)?,
        None => doc.threshold.clone().ok_or_else(|| Error::Usage("no threshold given".into()))?,
    };
    let th = Threshold::new(th)?;
    let probes = select_probes(&names)?;
    let (ea, eb) = (ws.entity(a)?, ws.entity(b)?);
    let d2 = distance_squared(&ea, &eb, &probes)?;
    line(out, "a", a);
    line(out, "b", b);
    line(out, "probes", probes.iter().map(|p| p.name).collect::<Vec<_>>().join(","));
    line(out, "th", format_rational(th.value()));
    line(out, "distance2", format_rational(&d2));
    line(out, "near", th.admits(&d2));
    Ok(EXIT_OK)
}

fn divide(path: &PathBuf, target: &str, grid: usize, out: &mut String) -> Result<i32, Error> {
    let ws = workspace(path)?;
    let t = ws.find(target)?;
    let Target::Ribbon(c, r) = t else {
        return Err(Error::WrongTargetKind { name: target.to_string(), kind: t.kind() });
    };
    let frame = c.frame().ok_or_else(|| Error::Usage(format!("complex `{}` has no vertices", c.name)))?;
    let report = verify_partition(r, &frame, grid)?;
    line(out, "target", target);
    line(out, "frame", format!("{} {}", frame.min, frame.max));
    line(out, "grid", grid);
    line(out, "samples", report.samples);
    for l in crate::division::RegionLabel::ALL {
        line(out, l, report.counts.get(&l).copied().unwrap_or(0));
    }
    line(out, "multiply_labeled", report.multiply_labeled.len());
    line(out, "unlabeled", report.unlabeled.len());
    line(out, "misclassified", report.misclassified.len());
    line(out, "unrealized", report.unrealized().iter().map(|l| l.as_str()).collect::<Vec<_>>().join(","));
    for (l, w) in &report.witnesses {
        line(out, format!("witness.{l}"), format!("{} r={}", w.point, format_rational(&w.radius)));
    }
    line(out, "passed", report.passed());
    Ok(EXIT_OK)
}

fn nervecheck(path: &PathBuf, resolution: u32, target: Option<&str>, out: &mut String) -> Result<i32, Error> {
    let ws = workspace(path)?;
    let mut families = Vec::new();
    for c in ws.complexes.values() {
        for (name, cycles) in &c.families {
            if target.is_none_or(|t| t == name) {
                families.push((c, name, cycles));
            }
        }
    }
    if let Some(t) = target {
        if families.is_empty() {
            return Err(Error::UnknownTarget(t.to_string()));
        }
    }
    if families.is_empty() {
        return Err(Error::Usage("document declares no convex families".into()));
    }
    let mut all = true;
    for (c, name, cycles) in families {
        let frame = c.frame().ok_or_else(|| Error::Usage(format!("complex `{}` has no vertices", c.name)))?;
        let regions: Vec<Region> = cycles.iter().map(Region::from).collect();
        let report = nerve_theorem_check(&regions, &frame, resolution)?;
        line(out, format!("{name}.nerve"), format!("{:?}", report.nerve_betti));
        line(out, format!("{name}.union"), format!("{:?}", report.cubical_betti));
        line(out, format!("{name}.pass"), report.passed());
        all &= report.passed();
    }
    line(out, "passed", all);
    Ok(if all { EXIT_OK } else { EXIT_VALIDATION })
}

fn render(path: &PathBuf, target: &str, output: Option<&PathBuf>, out: &mut String) -> Result<i32, Error> {
    let svg = render_svg(&workspace(path)?, target)?;
    match output {
        Some(p) => {
            std::fs::write(p, svg).map_err(|e| Error::Io { path: p.display().to_string(), message: e.to_string() })?
        }
        None => out.push_str(&svg),
    }
    Ok(EXIT_OK)
}

fn dispatch(cmd: Command, out: &mut String) -> Result<i32, Error> {
    match cmd {
        Command::Validate { file } => validate(&file, out),
        Command::Betti { file, target } => betti(&file, &target, out),
        Command::Nerve { file, target } => nerve_cmd(&file, target.as_deref(), out),
        Command::Near { file, a, b, probes, th } => near(&file, &a, &b, probes, th, out),
        Command::Divide { file, target, grid } => divide(&file, &target, grid, out),
        Command::Nervecheck { file, resolution, target } => nervecheck(&file, resolution, target.as_deref(), out),
        Command::Render { file, target, output } => render(&file, &target, output.as_ref(), out),
        Command::Fmt { file } => {
            out.push_str(&crate::document::serialize_document(&load(&file)?));
            Ok(EXIT_OK)
        }
    }
}

fn error_json(code: i32, kind: &str, message: &str) -> String {
    let v = serde_json::json!({ "code": code, "error": kind, "message": message });
    format!("{v}\n")
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_SCHEMA,
                    stdout: String::new(),
                    stderr: error_json(EXIT_SCHEMA, "Usage", text.trim()),
                }
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    let mut stdout = String::new();
    match dispatch(cli.command, &mut stdout) {
        Ok(code) => Outcome { code, stdout, stderr: String::new() },
        Err(e) => {
            let code = e.exit_code();
            Outcome { code, stdout: String::new(), stderr: error_json(code, &e.kind(), &e.to_string()) }
        }
    }
}
