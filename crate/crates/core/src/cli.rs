//! Command line front end. Every command prints JSON on the output stream;
//! failures print an error object on the error stream.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::equivalence::{decide, EquivalenceVerdict, Transformation};
use crate::expr::{parse, parse_map};
use crate::foliation::{build_configuration, Configuration};
use crate::oracle::{check_correspondence, OracleReport, DEFAULT_BUDGET};
use crate::realalg::Rational;
use crate::render::{render_svg, Viewport};
use crate::report::{ConfigurationJson, ErrorCode, ErrorJson, VerdictJson};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_ORACLE_SCOPE: i32 = 3;

/// Leaves sampled per canonical region by the oracle.
const ORACLE_SAMPLES: usize = 1;

#[derive(Debug, Parser)]
#[command(name = "linlike", version, about = "Classify linear-like planar submersions r(x) + s(x)y")]
struct Args {
    /// Emit JSON (the default).
    #[arg(long, global = true)]
    json: bool,
    /// Append a human-readable summary after the JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the configuration of a map.
    Analyze {
        /// Expression, or @PATH to read it from a file.
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Decide the four equivalences between two maps.
    Compare {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
        /// Also run the geometric oracle on each witness.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u32,
    },
    /// Draw the foliation as SVG.
    Render {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// "x0,x1,y0,y1"
        #[arg(long, allow_hyphen_values = true)]
        viewport: Option<String>,
        /// "WxH" in pixels.
        #[arg(long)]
        size: Option<String>,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a leaf correspondence with the geometric oracle.
    Oracle {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
        /// Defaults to the witness of `compare`, or Identity.
        #[arg(long)]
        transformation: Option<Transformation>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u32,
    },
}

#[derive(Debug)]
enum Failure {
    Input(ErrorJson),
    OracleScope(ErrorJson),
}

impl Failure {
    fn input(code: &'static str, message: impl Into<String>) -> Failure {
        Failure::Input(ErrorJson { error: code, message: message.into() })
    }
}

type Outcome = Result<(), Failure>;

/// Output of the command plus the human summary, if requested.
struct Streams<'a> {
    out: &'a mut dyn Write,
    pretty: bool,
}

impl Streams<'_> {
    fn json<T: Serialize>(&mut self, value: &T) -> Outcome {
        let text = serde_json::to_string_pretty(value).expect("report types serialize");
        writeln!(self.out, "{text}").map_err(|e| Failure::input("IO", e.to_string()))
    }

    fn human(&mut self, text: &str) -> Outcome {
        if self.pretty {
            write!(self.out, "\n{text}").map_err(|e| Failure::input("IO", e.to_string()))?;
        }
        Ok(())
    }
}

/// Run one invocation. `argv` includes the program name.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            use clap::error::ErrorKind::{DisplayHelp, DisplayVersion};
            if matches!(e.kind(), DisplayHelp | DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let payload = ErrorJson { error: "USAGE", message: e.render().to_string().trim().to_string() };
            write_error(err, &payload);
            return EXIT_INPUT;
        }
    };
    let mut streams = Streams { out, pretty: args.pretty };
    match catch_unwind(AssertUnwindSafe(|| execute(args.command, &mut streams))) {
        Ok(Ok(())) => EXIT_OK,
        Ok(Err(Failure::Input(e))) => {
            write_error(err, &e);
            EXIT_INPUT
        }
        Ok(Err(Failure::OracleScope(e))) => {
            write_error(err, &e);
            EXIT_ORACLE_SCOPE
        }
        Err(panic) => {
            let message = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "internal error".to_string());
            write_error(err, &ErrorJson { error: "INTERNAL", message });
            EXIT_INTERNAL
        }
    }
}

fn write_error(err: &mut dyn Write, e: &ErrorJson) {
    let _ = writeln!(err, "{}", serde_json::to_string(e).expect("error payload serializes"));
}

fn execute(command: Command, s: &mut Streams) -> Outcome {
    match command {
        Command::Analyze { expr } => {
            let conf = configuration(&expr)?;
            s.json(&ConfigurationJson::from(&conf))?;
            s.human(&configuration_table(&conf))
        }
        Command::Compare { p, q, oracle, budget } => {
            let (p, q) = (configuration(&p)?, configuration(&q)?);
            let verdict = decide(&p, &q);
            let oracle = if oracle {
                let reports = witness_transformations(&verdict)
                    .into_iter()
                    .map(|t| oracle_report(&p, &q, t, budget))
                    .collect::<Result<Vec<_>, _>>()?;
                Some(reports)
            } else {
                None
            };
            s.json(&CompareJson { verdict: (&verdict).into(), oracle })?;
            s.human(&verdict_table(&verdict))
        }
        Command::Render { expr, viewport, size, out } => {
            let conf = configuration(&expr)?;
            let mut vp = Viewport::around(&conf);
            if let Some(text) = viewport {
                let [x0, x1, y0, y1] = parse_viewport(&text)?;
                (vp.x_min, vp.x_max, vp.y_min, vp.y_max) = (x0, x1, y0, y1);
            }
            if let Some(text) = size {
                (vp.width_px, vp.height_px) = parse_size(&text)?;
            }
            let svg = render_svg(&conf, &vp).map_err(|e| Failure::Input(e.to_json()))?;
            match out {
                Some(path) => {
                    std::fs::write(&path, &svg)
                        .map_err(|e| Failure::input("IO", format!("{}: {e}", path.display())))?;
                    s.json(&RenderJson { out: path.display().to_string(), bytes: svg.len() })
                }
                None => write!(s.out, "{svg}").map_err(|e| Failure::input("IO", e.to_string())),
            }
        }
        Command::Oracle { p, q, transformation, budget } => {
            let (p, q) = (configuration(&p)?, configuration(&q)?);
            let t = transformation
                .or_else(|| decide(&p, &q).witness().map(|w| w.transformation))
                .unwrap_or(Transformation::Identity);
            let report = oracle_report(&p, &q, t, budget)?;
            s.json(&report)?;
            s.human(&oracle_table(&report))
        }
    }
}

#[derive(Serialize)]
struct CompareJson {
    #[serde(flatten)]
    verdict: VerdictJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<Vec<OracleReport>>,
}

#[derive(Serialize)]
struct RenderJson {
    out: String,
    bytes: usize,
}

/// Reads `@PATH` arguments from disk.
fn expression(arg: &str) -> Result<String, Failure> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map(|t| t.trim().to_string())
            .map_err(|e| Failure::input("IO", format!("{path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn configuration(arg: &str) -> Result<Configuration, Failure> {
    let map = parse_map(&expression(arg)?).map_err(|e| Failure::Input(e.to_json()))?;
    build_configuration(&map).map_err(|e| Failure::Input(e.to_json()))
}

fn oracle_report(
    p: &Configuration,
    q: &Configuration,
    t: Transformation,
    budget: u32,
) -> Result<OracleReport, Failure> {
    check_correspondence(p, q, t, ORACLE_SAMPLES, budget).map_err(|e| Failure::OracleScope(e.to_json()))
}

fn witness_transformations(v: &EquivalenceVerdict) -> Vec<Transformation> {
    let mut ts: Vec<Transformation> = Vec::new();
    for w in v.witnesses.iter().filter_map(|(_, w)| w.as_ref()) {
        if !ts.contains(&w.transformation) {
            ts.push(w.transformation);
        }
    }
    ts
}

fn parse_viewport(text: &str) -> Result<[Rational; 4], Failure> {
    let bad = || Failure::input("VIEWPORT", format!("expected x0,x1,y0,y1 with rational entries, got '{text}'"));
    let values: Vec<Rational> = text
        .split(',')
        .map(|part| parse(part.trim()).ok().and_then(|p| p.as_constant()).ok_or_else(bad))
        .collect::<Result<_, _>>()?;
    values.try_into().map_err(|_| bad())
}

fn parse_size(text: &str) -> Result<(u32, u32), Failure> {
    let bad = || Failure::input("SIZE", format!("expected WxH in pixels, got '{text}'"));
    let (w, h) = text.split_once(['x', 'X']).ok_or_else(bad)?;
    Ok((w.trim().parse().map_err(|_| bad())?, h.trim().parse().map_err(|_| bad())?))
}

fn configuration_table(c: &Configuration) -> String {
    let list = |v: Vec<String>| if v.is_empty() { "-".to_string() } else { v.join(", ") };
    let mut t = String::new();
    t += &format!("map           {}\n", c.map);
    t += &format!("roots         {}\n", list(c.roots.iter().map(|z| z.to_string()).collect()));
    t += &format!("bifurcation   {}\n", list(c.bifurcation.iter().map(|z| z.to_string()).collect()));
    t += &format!("tokens        {}\n", list(c.tokens.iter().map(|z| z.to_string()).collect()));
    t += &format!("regions       {}\n", c.regions.len());
    t
}

fn verdict_table(v: &EquivalenceVerdict) -> String {
    let mut t = String::from("verdict        holds  reason\n");
    let holds = v.verdicts();
    for ((name, h), (_, o)) in holds.iter().zip(v.obstructions.iter()) {
        let reason = o.map(|o| format!("{}: {}", o.code(), o.explanation())).unwrap_or_default();
        t += &format!("{name:<14} {:<6} {reason}\n", if *h { "yes" } else { "no" });
    }
    if let Some(w) = v.witness() {
        let sigma: Vec<String> = w.sigma.pairs.iter().map(|(a, b)| format!("{a}->{b}")).collect();
        t += &format!("witness        {} sigma [{}] {:?}\n", w.transformation, sigma.join(", "), w.sigma.monotonicity);
    }
    t
}

fn oracle_table(r: &OracleReport) -> String {
    let mut t = format!(
        "transformation {}\nchecked        {}\nviolations     {}\ninconclusive   {}\n",
        r.transformation,
        r.checked,
        r.violations.len(),
        r.inconclusive.len()
    );
    for v in &r.violations {
        t += &format!("  {} : {} vs {}\n", v.triple.join(" "), v.relation_p, v.relation_q);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("linlike").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn viewport_and_size_parsing() {
        let v = parse_viewport("-1, 2, -3/2, 4").unwrap();
        assert_eq!(v[2], Rational::new((-3).into(), 2.into()));
        assert!(parse_viewport("1,2,3").is_err());
        assert_eq!(parse_size("640x480").unwrap(), (640, 480));
        assert!(parse_size("640").is_err());
    }

    #[test]
    fn usage_error_exit_code() {
        let (code, _, err) = call(&["frobnicate"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("\"USAGE\""));
    }

    #[test]
    fn help_goes_to_output() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("analyze"));
    }
}
