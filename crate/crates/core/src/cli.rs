//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage errors.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::conifold::{
    chamber_json, classify_chamber, is_generic, named_series, negative_roots, universal_series,
    vertex_pt, z_series_framed, z_series_product, Named, UniversalForm,
};
use crate::error::{Error, Result};
use crate::oracle::{default_cap, CountQuery, CountReport};
use crate::series::{DimVec, GeomSeries};
use crate::torus::Stability;
use crate::verify::{self, checks_json, Options, Suite};

#[derive(Parser, Debug)]
#[command(name = "conifold-dt", version, about = "Motivic DT series of the conifold quiver")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// The universal series A_U.
    Universal {
        #[arg(long, default_value_t = 8)]
        order: u32,
        #[arg(long, value_enum, default_value_t = FormArg::Exp)]
        form: FormArg,
        #[command(flatten)]
        out: OutputArg,
    },
    /// The chamber series Z at a stability parameter.
    Zeta {
        #[command(flatten)]
        stab: StabilityArgs,
        #[arg(long, default_value_t = 8)]
        order: u32,
        #[arg(long, value_enum, default_value_t = RouteArg::Product)]
        route: RouteArg,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Classify the chamber of a stability parameter.
    Chamber {
        #[command(flatten)]
        stab: StabilityArgs,
        #[arg(long, default_value_t = 8)]
        root_bound: u32,
        #[arg(long, value_enum, default_value_t = Output::Json)]
        output: Output,
    },
    /// Refined PT, DT and Hilbert scheme series in (s, T).
    Dtpt {
        #[arg(long, default_value_t = 6)]
        s_order: u32,
        #[arg(long, default_value_t = 3)]
        t_order: u32,
        /// Check DT = HILB * PT; exit 1 on failure.
        #[arg(long)]
        check_factorization: bool,
        /// Also print the q = 1 specializations.
        #[arg(long)]
        euler: bool,
        #[command(flatten)]
        out: OutputArg,
    },
    /// The refined vertex product, compared with PT(-s, T).
    Vertex {
        #[arg(long, default_value_t = 6)]
        s_order: u32,
        #[arg(long, default_value_t = 3)]
        t_order: u32,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Count cut representations over F_p and compare with the prediction.
    Count {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        prime: u64,
        /// Overrides the enumeration cap (default 1e9 or CONIFOLD_DT_CAP).
        #[arg(long)]
        cap: Option<u128>,
        #[arg(long)]
        strata: bool,
        #[arg(long, value_enum, default_value_t = Output::Json)]
        output: Output,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 8)]
        order: u32,
        #[command(flatten)]
        out: OutputArg,
    },
}

#[derive(Args, Debug)]
pub struct StabilityArgs {
    /// zeta as `r0,r1` with rationals `p/q`.
    #[arg(long, allow_hyphen_values = true)]
    zeta: String,
    /// Infinitesimal direction `e0,e1`.
    #[arg(long, allow_hyphen_values = true)]
    eps: Option<String>,
}

impl StabilityArgs {
    fn parse(&self) -> Result<Stability> {
        Stability::parse(&self.zeta, self.eps.as_deref())
    }
}

#[derive(Args, Debug)]
pub struct OutputArg {
    #[arg(long, value_enum, default_value_t = Output::Text)]
    output: Output,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Exp,
    Product,
    FirstProof,
}

impl From<FormArg> for UniversalForm {
    fn from(f: FormArg) -> Self {
        match f {
            FormArg::Exp => UniversalForm::Exp,
            FormArg::Product => UniversalForm::Product,
            FormArg::FirstProof => UniversalForm::FirstProof,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Product,
    Framed,
}

fn parse_alpha(s: &str) -> Result<DimVec> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || Error::Parse(format!("expected `a0,a1`, got `{s}`"));
    if parts.len() != 2 {
        return Err(bad());
    }
    let a0 = parts[0].parse().map_err(|_| bad())?;
    let a1 = parts[1].parse().map_err(|_| bad())?;
    Ok(DimVec::new(a0, a1))
}

fn emit(out: &mut dyn Write, v: &Value) -> std::io::Result<()> {
    writeln!(out, "{}", serde_json::to_string(v).expect("serializable"))
}

enum Outcome {
    Ok,
    Failed,
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(cli.command, out) {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::Failed) => 1,
        Err(CliError::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

enum CliError {
    Domain(Error),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn write_geom(out: &mut dyn Write, name: &str, g: &GeomSeries) -> std::io::Result<()> {
    writeln!(out, "# {name}")?;
    write!(out, "{g}")
}

fn execute(cmd: Command, out: &mut dyn Write) -> std::result::Result<Outcome, CliError> {
    match cmd {
        Command::Universal { order, form, out: o } => {
            let a = universal_series(order, form.into());
            match o.output {
                Output::Text => write!(out, "{a}")?,
                Output::Json => emit(out, &a.to_json())?,
            }
        }
        Command::Zeta { stab, order, route, out: o } => {
            let zs = stab.parse()?;
            let z = match route {
                RouteArg::Product => z_series_product(&zs, order)?,
                RouteArg::Framed => z_series_framed(&zs, order)?,
            };
            match o.output {
                Output::Text => write!(out, "{z}")?,
                Output::Json => emit(out, &z.to_json())?,
            }
        }
        Command::Chamber { stab, root_bound, output } => {
            let zs = stab.parse()?;
            let v = chamber_json(&zs, root_bound);
            match output {
                Output::Json => emit(out, &v)?,
                Output::Text => match is_generic(&zs).witness() {
                    Some(w) => writeln!(out, "not generic: wall of root {w}")?,
                    None => {
                        writeln!(out, "label: {}", classify_chamber(&zs, root_bound)?)?;
                        let roots: Vec<String> = negative_roots(&zs, root_bound)?
                            .iter()
                            .map(ToString::to_string)
                            .collect();
                        writeln!(out, "negative roots: {}", roots.join(" "))?;
                    }
                },
            }
        }
        Command::Dtpt { s_order, t_order, check_factorization, euler, out: o } => {
            let pt = named_series(Named::Pt, s_order, t_order);
            let dt = named_series(Named::Dt, s_order, t_order);
            let hilb = named_series(Named::Hilb, s_order, t_order);
            let factorization = hilb.mul(&pt)? == dt;
            let euler_of = |g: &GeomSeries| -> Result<Value> {
                let m = g.euler_specialize()?;
                Ok(Value::Array(
                    m.iter()
                        .map(|((s, t), v)| json!({ "exp": [s, t], "value": v.to_string() }))
                        .collect(),
                ))
            };
            match o.output {
                Output::Json => {
                    let mut v = json!({ "pt": pt.to_json(), "dt": dt.to_json(), "hilb": hilb.to_json() });
                    if check_factorization {
                        v["factorization"] = json!(factorization);
                    }
                    if euler {
                        v["euler"] = json!({
                            "pt": euler_of(&pt)?,
                            "dt": euler_of(&dt)?,
                            "hilb": euler_of(&hilb)?,
                        });
                    }
                    emit(out, &v)?;
                }
                Output::Text => {
                    write_geom(out, "PT", &pt)?;
                    write_geom(out, "DT", &dt)?;
                    write_geom(out, "HILB", &hilb)?;
                    if check_factorization {
                        writeln!(out, "# DT = HILB * PT: {factorization}")?;
                    }
                    if euler {
                        for (name, g) in [("PT", &pt), ("DT", &dt), ("HILB", &hilb)] {
                            writeln!(out, "# {name} at q = 1")?;
                            for ((s, t), v) in g.euler_specialize()? {
                                writeln!(out, "s^{s} T^{t} : {v}")?;
                            }
                        }
                    }
                }
            }
            if check_factorization && !factorization {
                return Ok(Outcome::Failed);
            }
        }
        Command::Vertex { s_order, t_order, out: o } => {
            let v = vertex_pt(s_order, t_order);
            let matches = v == named_series(Named::Pt, s_order, t_order).negate_s();
            match o.output {
                Output::Json => emit(out, &json!({ "vertex": v.to_json(), "match": matches }))?,
                Output::Text => {
                    write!(out, "{v}")?;
                    writeln!(out, "# equals PT(-s, T): {matches}")?;
                }
            }
            if !matches {
                return Ok(Outcome::Failed);
            }
        }
        Command::Count { alpha, prime, cap, strata, output } => {
            let q = CountQuery::new(parse_alpha(&alpha)?, prime).with_cap(cap.unwrap_or_else(default_cap));
            let report = CountReport::run(&q, strata)?;
            match output {
                Output::Json => emit(out, &report.to_json())?,
                Output::Text => {
                    writeln!(out, "alpha: {}", report.alpha)?;
                    writeln!(out, "p: {}", report.p)?;
                    writeln!(out, "count: {}", report.count)?;
                    writeln!(out, "predicted: {}", report.predicted)?;
                    if let Some(s) = &report.strata {
                        for (a, n) in s {
                            writeln!(out, "stratum {a}: {n}")?;
                        }
                    }
                    writeln!(out, "match: {}", report.matches())?;
                }
            }
            if !report.matches() {
                return Ok(Outcome::Failed);
            }
        }
        Command::Verify { suite, order, out: o } => {
            let suites = Suite::parse_selection(&suite)?;
            let checks = verify::run(&suites, &Options::with_order(order));
            match o.output {
                Output::Json => emit(out, &checks_json(&checks))?,
                Output::Text => {
                    for c in &checks {
                        writeln!(out, "{c}")?;
                    }
                    let failed = checks.iter().filter(|c| !c.passed).count();
                    writeln!(out, "{} checks, {failed} failed", checks.len())?;
                }
            }
            if checks.iter().any(|c| !c.passed) {
                return Ok(Outcome::Failed);
            }
        }
    }
    Ok(Outcome::Ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("conifold-dt").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn parses_negative_stability() {
        let (code, out, _) = call(&["chamber", "--zeta", "-1,1", "--eps", "1,0"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"label\":\"PT_Y\""), "{out}");
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(call(&["universal", "--form", "nope"]).0, 2);
        assert_eq!(call(&["bogus"]).0, 2);
        assert_eq!(call(&["zeta", "--zeta", "-1,1"]).0, 2);
        assert_eq!(call(&["count", "--alpha", "2", "--prime", "2"]).0, 2);
        assert_eq!(call(&["count", "--alpha", "2,2", "--prime", "5", "--cap", "10"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }
}
