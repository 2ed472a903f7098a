//! `loopss compute|verify`.
//!
//! Exit codes: 0 success or PASS, 1 verification FAIL, 2 input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::model::{
    assemble_total_degree, builtin_candidate, circle_loop_homology, laurent_piece,
    match_presentation, parse_candidate, ziller_reference, ManifoldModel, ModelName,
    PresentationCandidate, Verdict,
};
use crate::spectral::Page;

use super::{emit_json_pages, render_chart, render_summary, render_svg};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "loopss",
    version,
    about = "Loop homology spectral sequences over the integers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute pages and print them.
    Compute(Common),
    /// Compare the stable page with an expected presentation.
    Verify(Common),
}

#[derive(Args, Debug)]
struct Common {
    /// sphere:N, cpn:N, circle or custom:PATH
    #[arg(long)]
    model: String,
    /// Top row of the window (default 3d + 4).
    #[arg(long = "tmax")]
    t_max: Option<i64>,
    #[arg(long, value_enum, default_value_t = Format::Summary)]
    format: Format,
    /// Registered presentation name or a candidate file.
    #[arg(long)]
    expect: Option<String>,
    /// Page range `R1..R2` or a single page `R`; `inf` names the stable page.
    #[arg(long)]
    pages: Option<String>,
    /// Also write the last printed page as SVG (chart format only).
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Chart,
    Summary,
}

struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn parse_pages(text: &str, last: i64) -> Result<(i64, i64), InputError> {
    let one = |s: &str| -> Result<i64, InputError> {
        match s.trim() {
            "inf" => Ok(last),
            v => v
                .parse::<i64>()
                .map_err(|_| InputError(format!("bad page index `{v}`"))),
        }
    };
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (one(a)?, one(b)?),
        None => {
            let r = one(text)?;
            (r, r)
        }
    };
    if lo < 2 || hi < lo || hi > last {
        return Err(InputError(format!("page range {text} outside 2..{last}")));
    }
    Ok((lo, hi))
}

/// Runs the CLI on `args` (including the program name). Output goes to `out`,
/// diagnostics to `err`; the return value is the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let result = match &cli.command {
        Command::Compute(c) => compute(c, out),
        Command::Verify(c) => verify(c, out),
    };
    match result {
        Ok(code) => code,
        Err(InputError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

fn load(c: &Common) -> Result<ManifoldModel, InputError> {
    let name: ModelName = c.model.parse()?;
    Ok(ManifoldModel::from_name(&name)?)
}

fn window(c: &Common, model: &ManifoldModel) -> Result<i64, InputError> {
    let t_max = c.t_max.unwrap_or_else(|| model.default_t_max());
    if t_max < model.dimension + 2 {
        return Err(InputError(format!(
            "--tmax {t_max} is too small; need at least d + 2 = {}",
            model.dimension + 2
        )));
    }
    Ok(t_max)
}

fn compute(c: &Common, out: &mut dyn Write) -> Result<i32, InputError> {
    let model = load(c)?;
    if model.is_laurent() {
        print_closed_form(&model, c.format, out)?;
        return Ok(EXIT_OK);
    }
    let t_max = window(c, &model)?;
    let pages = model.pages(t_max)?;
    let last = pages.last().expect("nonempty").r();
    let (lo, hi) = match &c.pages {
        Some(text) => parse_pages(text, last)?,
        None => (2, last),
    };
    let chosen: Vec<&Page> = pages
        .iter()
        .filter(|p| (lo..=hi).contains(&p.r()))
        .collect();
    match c.format {
        Format::Json => {
            let items: Vec<_> = chosen.iter().map(|p| (*p, model.spec_for(p.r()))).collect();
            writeln!(out, "{}", emit_json_pages(&items))?;
        }
        Format::Chart => {
            for (i, p) in chosen.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                write!(out, "{}", render_chart(p, model.spec_for(p.r())))?;
            }
        }
        Format::Summary => {
            writeln!(
                out,
                "{}: d = {}, t_max = {}",
                model.name, model.dimension, t_max
            )?;
            for p in &chosen {
                write!(out, "{}", render_summary(p))?;
            }
        }
    }
    if let Some(path) = &c.svg {
        if c.format != Format::Chart {
            return Err(InputError("--svg requires --format chart".into()));
        }
        let p = chosen.last().expect("nonempty range");
        std::fs::write(path, render_svg(p, model.spec_for(p.r())))
            .map_err(|e| InputError(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(EXIT_OK)
}

fn print_closed_form(
    model: &ManifoldModel,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), InputError> {
    let p = model.presentation();
    let d = model.dimension;
    let degrees = -d - 1..=1;
    if format == Format::Json {
        let generators: Vec<_> = p
            .generators()
            .iter()
            .map(|g| serde_json::json!({"name": g.name, "s": g.column, "t": g.row, "kind": g.kind.to_string()}))
            .collect();
        let pieces: Vec<_> = degrees
            .map(|j| serde_json::json!({"degree": j, "basis": laurent_piece(p, d, j).basis_families()}))
            .collect();
        let doc = serde_json::json!({"model": model.name.to_string(), "generators": generators, "pieces": pieces});
        writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        return Ok(());
    }
    writeln!(out, "{}: closed form, no spectral sequence", model.name)?;
    for g in p.generators() {
        writeln!(out, "  {} ({},{}) {}", g.name, g.column, g.row, g.kind)?;
    }
    for j in degrees.rev() {
        writeln!(out, "  degree {j}: {}", laurent_piece(p, d, j))?;
    }
    Ok(())
}

fn default_expectation(name: &ModelName) -> Option<&'static str> {
    match name {
        ModelName::Sphere(_) => Some("theorem2"),
        ModelName::Cpn(_) => Some("theorem3"),
        ModelName::Circle => Some("circle"),
        ModelName::Custom(_) => None,
    }
}

fn candidate(
    c: &Common,
    model: &ManifoldModel,
    bound: i64,
) -> Result<PresentationCandidate, InputError> {
    let expect = match c
        .expect
        .as_deref()
        .or_else(|| default_expectation(&model.name))
    {
        Some(e) => e,
        None => return Err(InputError("custom models need --expect PATH".into())),
    };
    let path = PathBuf::from(expect);
    if path.is_file() {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| InputError(format!("cannot read {expect}: {e}")))?;
        return Ok(parse_candidate(expect, &text, bound)?);
    }
    Ok(builtin_candidate(expect, &model.name, bound)?)
}

fn verify(c: &Common, out: &mut dyn Write) -> Result<i32, InputError> {
    let model = load(c)?;
    if model.is_laurent() {
        let cand = candidate(c, &model, 0)?;
        let closed = circle_loop_homology();
        if cand.presentation == closed && model.presentation() == &closed {
            writeln!(
                out,
                "PASS {} on {}: closed form agrees",
                cand.name, model.name
            )?;
            print_closed_form(&model, Format::Summary, out)?;
            return Ok(EXIT_OK);
        }
        writeln!(
            out,
            "FAIL {} on {}: presentations differ",
            cand.name, model.name
        )?;
        return Ok(EXIT_FAIL);
    }
    let t_max = window(c, &model)?;
    let einf = model.e_infinity(t_max)?;
    let bound = einf.reliable_degree_bound();
    let cand = candidate(c, &model, bound)?;
    let verdict = match_presentation(&einf, &cand)?;
    let mut code = EXIT_OK;
    match &verdict {
        Verdict::Pass { .. } => writeln!(
            out,
            "{verdict}: {} on {} through total degree {bound}",
            cand.name, model.name
        )?,
        Verdict::Fail(m) => {
            code = EXIT_FAIL;
            writeln!(out, "FAIL: {} on {}: {m}", cand.name, model.name)?;
        }
    }
    if let ModelName::Cpn(n) = model.name {
        let mut ok = true;
        let top = bound + 2 * n;
        for k in 0..=top {
            let got = assemble_total_degree(&einf, k - 2 * n)?;
            let want = ziller_reference(n, k);
            if got.rank() != want.rank() || got.torsion_order() != want.torsion_order() {
                writeln!(out, "FAIL ziller: H_{k} expected {want}, assembled {got}")?;
                ok = false;
                break;
            }
        }
        if ok {
            writeln!(out, "PASS ziller: H_k for k = 0..{top}")?;
        } else {
            code = EXIT_FAIL;
        }
    }
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("loopss").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn page_ranges() {
        assert!(matches!(parse_pages("2..3", 3), Ok((2, 3))));
        assert!(matches!(parse_pages("inf", 5), Ok((5, 5))));
        assert!(parse_pages("1..3", 3).is_err());
        assert!(parse_pages("2..9", 3).is_err());
        assert!(parse_pages("x", 3).is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(
            call(&["verify", "--model", "sphere:3", "--expect", "theorem2"]).0,
            EXIT_OK
        );
        let (code, out, _) = call(&[
            "verify",
            "--model",
            "sphere:2",
            "--expect",
            "theorem2-odd-form",
        ]);
        assert_eq!(code, EXIT_FAIL);
        assert!(out.contains("(-2,2)"));
        let (code, _, err) = call(&["compute", "--model", "sphere:1"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("circle"));
        assert_eq!(
            call(&["compute", "--model", "sphere:2", "--tmax", "2"]).0,
            EXIT_INPUT
        );
        assert_eq!(call(&["frobnicate"]).0, EXIT_INPUT);
    }

    #[test]
    fn circle_closed_form() {
        let (code, out, _) = call(&["compute", "--model", "circle"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("degree 0: free, countable basis indexed by k: {t^k}"));
        assert!(out.contains("degree -1: free, countable basis indexed by k: {a*t^k}"));
        assert!(out.contains("degree 1: 0"));
    }
}
