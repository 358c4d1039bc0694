//! Command dispatch and reporting for the `bisurf` binary.

use std::fmt::Write as _;
use std::path::PathBuf;

use bisurf_core::bipoly::{BiDegree, BiPoly};
use bisurf_core::classify::{classify, singular_line_candidates, SingularLine, TypeReport};
use bisurf_core::dualscroll::{cross_check, dual_report, DualReport};
use bisurf_core::ideal::{hilbert_table, is_basepoint_free, BasepointReport, HilbertTable, Ideal};
use bisurf_core::implicitize::{implicit_equation_for, oracle_check, ImplicitResult};
use bisurf_core::parse::parse_poly;
use bisurf_core::resolution::{betti_table, resolve_ideal, BettiTable, Resolution, DEFAULT_WINDOW};
use bisurf_core::Error;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_BASEPOINTS: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "bisurf", version, about = "Analyze basepoint-free spaces of bidegree (2,1) forms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate the generators and test for basepoints.
    Check(Common),
    /// Numerical type and syzygy counts.
    Classify(Common),
    /// Bigraded Hilbert function of R/I.
    Hilbert(HilbertArgs),
    /// Betti table of the minimal free resolution.
    Betti(Common),
    /// Full minimal free resolution with differentials.
    Resolve(Common),
    /// Implicit equation of the image surface.
    Implicitize(Common),
    /// Singular lines of the image surface.
    Singular(Common),
    /// Dual-scroll common factor analysis.
    Dual(Common),
    /// Run every analysis and print one JSON document.
    Report(Common),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Input file: JSON `{"generators": [...]}` or one polynomial per line; `-` for stdin.
    pub input: PathBuf,
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
    /// Resolution window `a,b`.
    #[arg(long, value_parser = parse_window)]
    pub window: Option<BiDegree>,
    /// Cross-check the implicit equation against the evaluation kernel.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Args, Debug, Clone)]
pub struct HilbertArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 5)]
    pub imax: u32,
    #[arg(long, default_value_t = 4)]
    pub jmax: u32,
}

pub fn parse_window(s: &str) -> std::result::Result<BiDegree, String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected a,b but got {s:?}"))?;
    let a: u32 = a.trim().parse().map_err(|e| format!("bad window {s:?}: {e}"))?;
    let b: u32 = b.trim().parse().map_err(|e| format!("bad window {s:?}: {e}"))?;
    Ok(BiDegree::new(a, b))
}

/// Output and exit code of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, stderr: String::new(), code: EXIT_OK }
    }

    fn fail(code: i32, msg: String) -> Self {
        Outcome { stdout: String::new(), stderr: msg, code }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::NotBihomogeneous(_) => EXIT_PARSE,
        Error::ZeroInput
        | Error::WrongBidegree { .. }
        | Error::WrongGeneratorCount(_)
        | Error::DependentGenerators(_) => EXIT_INVALID,
        Error::NotBasepointFree(_) => EXIT_BASEPOINTS,
        _ => EXIT_INTERNAL,
    }
}

/// Generators extracted from an input file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedInput {
    pub generators: Vec<BiPoly>,
    pub source: String,
}

pub fn parse_input(text: &str, source: &str) -> std::result::Result<ParsedInput, (i32, String)> {
    let lines: Vec<String> = if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(text).map_err(|e| (EXIT_PARSE, format!("{source}: invalid JSON: {e}")))?;
        let arr = v
            .get("generators")
            .and_then(Value::as_array)
            .ok_or_else(|| (EXIT_PARSE, format!("{source}: missing \"generators\" array")))?;
        arr.iter()
            .map(|g| {
                g.as_str()
                    .map(str::to_owned)
                    .ok_or_else(|| (EXIT_PARSE, format!("{source}: generators must be strings")))
            })
            .collect::<std::result::Result<_, _>>()?
    } else {
        text.lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::to_owned)
            .collect()
    };
    let mut generators = Vec::with_capacity(lines.len());
    for (k, l) in lines.iter().enumerate() {
        let p = parse_poly(l).map_err(|e| (exit_code(&e), format!("{source}: generator {}: {e}", k + 1)))?;
        generators.push(p);
    }
    Ok(ParsedInput { generators, source: source.to_owned() })
}

fn read_input(path: &PathBuf) -> std::result::Result<ParsedInput, (i32, String)> {
    let source = path.display().to_string();
    let text = if source == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
            .map_err(|e| (EXIT_INTERNAL, format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| (EXIT_INTERNAL, format!("{source}: {e}")))?
    };
    parse_input(&text, &source)
}

/// Window from the flag, else `BISURF_WINDOW`, else the default.
pub fn resolve_window(flag: Option<BiDegree>, env: Option<&str>) -> std::result::Result<BiDegree, String> {
    if let Some(w) = flag {
        return Ok(w);
    }
    match env {
        Some(s) if !s.trim().is_empty() => parse_window(s).map_err(|e| format!("BISURF_WINDOW: {e}")),
        _ => Ok(DEFAULT_WINDOW),
    }
}

pub fn run(cli: Cli) -> Outcome {
    let env = std::env::var("BISURF_WINDOW").ok();
    run_with_env(cli, env.as_deref())
}

pub fn run_with_env(cli: Cli, env_window: Option<&str>) -> Outcome {
    let (common, hilbert_bounds) = match &cli.command {
        Command::Hilbert(h) => (h.common.clone(), Some((h.imax, h.jmax))),
        Command::Check(c)
        | Command::Classify(c)
        | Command::Betti(c)
        | Command::Resolve(c)
        | Command::Implicitize(c)
        | Command::Singular(c)
        | Command::Dual(c)
        | Command::Report(c) => (c.clone(), None),
    };
    let window = match resolve_window(common.window, env_window) {
        Ok(w) => w,
        Err(e) => return Outcome::fail(EXIT_PARSE, e),
    };
    let input = match read_input(&common.input) {
        Ok(i) => i,
        Err((code, msg)) => return Outcome::fail(code, msg),
    };
    let ctx = Context { json: common.json, window, oracle: common.oracle };
    match &cli.command {
        Command::Check(_) => ctx.check(input),
        Command::Report(_) => ctx.report(input),
        cmd => match ctx.analysis(cmd, input, hilbert_bounds) {
            Ok(s) => Outcome::ok(s),
            Err(e) => Outcome::fail(exit_code(&e), e.to_string()),
        },
    }
}

fn validate(input: ParsedInput) -> std::result::Result<Ideal, Error> {
    Ideal::new(input.generators)
}

fn require_free(ideal: &Ideal) -> std::result::Result<BasepointReport, Error> {
    let bp = is_basepoint_free(ideal);
    if !bp.free {
        let w = bp.witness.as_ref().map(|w| w.to_string()).unwrap_or_default();
        return Err(Error::NotBasepointFree(w));
    }
    Ok(bp)
}

struct Context {
    json: bool,
    window: BiDegree,
    oracle: bool,
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn witness_json(bp: &BasepointReport) -> Value {
    bp.witness.as_ref().map(|w| Value::String(w.to_string())).unwrap_or(Value::Null)
}

fn point_string(st: &[bisurf_core::Scalar; 2], uv: &[bisurf_core::Scalar; 2]) -> String {
    format!("({}:{})x({}:{})", st[0], st[1], uv[0], uv[1])
}

fn hilbert_json(h: &HilbertTable) -> Value {
    Value::Array(h.values.iter().map(|r| json!(r)).collect())
}

fn betti_json(b: &BettiTable) -> Value {
    let mut levels = Map::new();
    for (h, shifts) in &b.levels {
        let mut m = Map::new();
        for (d, r) in shifts {
            m.insert(format!("(-{},-{})", d.m, d.n), json!(r));
        }
        levels.insert(h.to_string(), Value::Object(m));
    }
    Value::Object(levels)
}

fn implicit_json(r: &ImplicitResult) -> Value {
    json!({
        "det": r.det.to_string(),
        "reduced": r.reduced.to_string(),
        "multiplicity": r.multiplicity,
        "birational": r.birational,
    })
}

fn lines_json(lines: &[SingularLine]) -> Value {
    Value::Array(
        lines
            .iter()
            .map(|l| json!([l.forms[0].to_string(), l.forms[1].to_string()]))
            .collect(),
    )
}

fn dual_json(d: &DualReport, consistent: bool) -> Value {
    let residual = d.residual.as_ref().map(|r| {
        json!({
            "kind": r.kind.to_string(),
            "points": r.points.iter().map(|(a, b)| point_string(a, b)).collect::<Vec<_>>(),
        })
    });
    json!({
        "uperp": [d.uperp[0].to_string(), d.uperp[1].to_string()],
        "pullbacks": d.pullback_strings(),
        "g": d.factor.as_ref().map(|f| f.g.fmt_with(&bisurf_core::bipoly::DUAL_VARS)),
        "g_degree": d.factor.as_ref().map(|f| f.degree().to_string()),
        "residual": residual,
        "predicted_type": d.predicted.to_string(),
        "consistent": consistent,
    })
}

fn type_fields(m: &mut Map<String, Value>, r: &TypeReport) {
    m.insert("type".into(), json!(r.numerical_type.label()));
    m.insert("n01".into(), json!(r.n01));
    m.insert("n10".into(), json!(r.n10));
    m.insert("has02".into(), json!(r.has02));
    m.insert("p".into(), json!(r.p.as_ref().map(|p| p.to_string())));
    m.insert("q".into(), json!(r.q.as_ref().map(|q| q.to_string())));
}

fn type_text(r: &TypeReport) -> String {
    let mut s = String::new();
    writeln!(s, "type: {}", r.numerical_type.label()).unwrap();
    writeln!(s, "n01: {}", r.n01).unwrap();
    writeln!(s, "n10: {}", r.n10).unwrap();
    writeln!(s, "has02: {}", r.has02).unwrap();
    if let Some(p) = &r.p {
        writeln!(s, "p: {p}").unwrap();
    }
    if let Some(q) = &r.q {
        writeln!(s, "q: {q}").unwrap();
    }
    s
}

fn differentials_text(res: &Resolution) -> String {
    let mut s = String::new();
    for (h, d) in res.differentials.iter().enumerate() {
        writeln!(s, "d{}: F{} -> F{}  ({} x {})", h + 1, h + 1, h, d.target.len(), d.source.len()).unwrap();
        for r in 0..d.target.len() {
            let row: Vec<String> = (0..d.source.len()).map(|c| d.entry(r, c).to_string()).collect();
            writeln!(s, "  [{}]", row.join(", ")).unwrap();
        }
    }
    s
}

impl Context {
    fn check(&self, input: ParsedInput) -> Outcome {
        let ideal = match validate(input) {
            Ok(i) => i,
            Err(e) => return Outcome::fail(exit_code(&e), e.to_string()),
        };
        let bp = is_basepoint_free(&ideal);
        let points: Vec<String> = bp.rational_points.iter().map(|p| point_string(&p.st, &p.uv)).collect();
        let out = if self.json {
            render(&json!({
                "valid": true,
                "basepoint_free": bp.free,
                "witness": witness_json(&bp),
                "basepoints": points,
            }))
        } else {
            let mut s = String::from("valid: true\n");
            writeln!(s, "basepoint_free: {}", bp.free).unwrap();
            if let Some(w) = &bp.witness {
                writeln!(s, "witness: {w}").unwrap();
            }
            for p in &points {
                writeln!(s, "basepoint: {p}").unwrap();
            }
            s
        };
        Outcome::ok(out)
    }

    fn analysis(&self, cmd: &Command, input: ParsedInput, bounds: Option<(u32, u32)>) -> Result<String, Error> {
        let ideal = validate(input)?;
        require_free(&ideal)?;
        match cmd {
            Command::Classify(_) => {
                let r = classify(&ideal)?;
                if self.json {
                    let mut m = Map::new();
                    type_fields(&mut m, &r);
                    m.insert(
                        "embedded_primes".into(),
                        json!(r.embedded_primes.iter().map(|p| p.to_string()).collect::<Vec<_>>()),
                    );
                    Ok(render(&Value::Object(m)))
                } else {
                    let mut s = type_text(&r);
                    for p in &r.embedded_primes {
                        writeln!(s, "embedded prime: {p}").unwrap();
                    }
                    Ok(s)
                }
            }
            Command::Hilbert(_) => {
                let (imax, jmax) = bounds.unwrap_or((5, 4));
                let h = hilbert_table(&ideal, imax, jmax);
                Ok(if self.json { render(&hilbert_json(&h)) } else { format!("{h}\n") })
            }
            Command::Betti(_) => {
                let b = betti_table(&resolve_ideal(&ideal, self.window)?);
                Ok(if self.json { render(&betti_json(&b)) } else { format!("{b}\n") })
            }
            Command::Resolve(_) => {
                let res = resolve_ideal(&ideal, self.window)?;
                res.check_complex()?;
                let b = betti_table(&res);
                if self.json {
                    let ds: Vec<Value> = res
                        .differentials
                        .iter()
                        .map(|d| {
                            json!((0..d.target.len())
                                .map(|r| (0..d.source.len()).map(|c| d.entry(r, c).to_string()).collect::<Vec<_>>())
                                .collect::<Vec<_>>())
                        })
                        .collect();
                    Ok(render(&json!({"betti": betti_json(&b), "differentials": ds})))
                } else {
                    Ok(format!("{b}\n{}", differentials_text(&res)))
                }
            }
            Command::Implicitize(_) => {
                let ty = classify(&ideal)?.numerical_type;
                let r = implicit_equation_for(&ideal, ty)?;
                if self.oracle {
                    oracle_check(&ideal, &r)?;
                }
                if self.json {
                    let mut v = implicit_json(&r);
                    if self.oracle {
                        v["oracle"] = json!(true);
                    }
                    Ok(render(&v))
                } else {
                    let mut s = String::new();
                    writeln!(s, "det: {}", r.det).unwrap();
                    writeln!(s, "reduced: {}", r.reduced).unwrap();
                    writeln!(s, "multiplicity: {}", r.multiplicity).unwrap();
                    writeln!(s, "birational: {}", r.birational).unwrap();
                    if self.oracle {
                        writeln!(s, "oracle: agrees").unwrap();
                    }
                    Ok(s)
                }
            }
            Command::Singular(_) => {
                let r = classify(&ideal)?;
                let imp = implicit_equation_for(&ideal, r.numerical_type)?;
                let lines = singular_line_candidates(&ideal, &r, &imp.reduced)?;
                if self.json {
                    Ok(render(&lines_json(&lines)))
                } else if lines.is_empty() {
                    Ok("no singular lines\n".into())
                } else {
                    Ok(lines.iter().map(|l| format!("{l}\n")).collect())
                }
            }
            Command::Dual(_) => {
                let r = classify(&ideal)?;
                let d = dual_report(&ideal)?;
                let ok = cross_check(&d, &r);
                if self.json {
                    Ok(render(&dual_json(&d, ok)))
                } else {
                    let mut s = String::new();
                    writeln!(s, "uperp: {}, {}", d.uperp[0], d.uperp[1]).unwrap();
                    let [a, b] = d.pullback_strings();
                    writeln!(s, "pullbacks: {a}, {b}").unwrap();
                    match &d.factor {
                        Some(f) => writeln!(
                            s,
                            "common factor: {} of bidegree {}",
                            f.g.fmt_with(&bisurf_core::bipoly::DUAL_VARS),
                            f.degree()
                        )
                        .unwrap(),
                        None => writeln!(s, "common factor: none").unwrap(),
                    }
                    if let Some(res) = &d.residual {
                        let pts: Vec<String> = res.points.iter().map(|(a, b)| point_string(a, b)).collect();
                        writeln!(s, "residual: {} {}", res.kind, pts.join(" ")).unwrap();
                    }
                    writeln!(s, "predicted: {}", d.predicted).unwrap();
                    writeln!(s, "type: {}", r.numerical_type.label()).unwrap();
                    writeln!(s, "consistent: {ok}").unwrap();
                    Ok(s)
                }
            }
            Command::Check(_) | Command::Report(_) => unreachable!("handled separately"),
        }
    }

    fn report(&self, input: ParsedInput) -> Outcome {
        let ideal = match validate(input) {
            Ok(i) => i,
            Err(e) => {
                return Outcome {
                    stdout: render(&json!({"valid": false, "error": e.to_string()})),
                    stderr: e.to_string(),
                    code: exit_code(&e),
                }
            }
        };
        let mut m = Map::new();
        m.insert("valid".into(), json!(true));
        let bp = is_basepoint_free(&ideal);
        m.insert("basepoint_free".into(), json!(bp.free));
        if !bp.free {
            m.insert("witness".into(), witness_json(&bp));
            return Outcome {
                stdout: render(&Value::Object(m)),
                stderr: "basepoints present".into(),
                code: EXIT_BASEPOINTS,
            };
        }
        match self.full_report(&ideal, &mut m) {
            Ok(()) => Outcome::ok(render(&Value::Object(m))),
            Err(e) => Outcome::fail(exit_code(&e), e.to_string()),
        }
    }

    fn full_report(&self, ideal: &Ideal, m: &mut Map<String, Value>) -> Result<(), Error> {
        let r = classify(ideal)?;
        type_fields(m, &r);
        m.insert("hilbert".into(), hilbert_json(&hilbert_table(ideal, 5, 4)));
        let res = resolve_ideal(ideal, self.window)?;
        res.check_complex()?;
        m.insert("betti".into(), betti_json(&betti_table(&res)));
        let imp = implicit_equation_for(ideal, r.numerical_type)?;
        if self.oracle {
            oracle_check(ideal, &imp)?;
        }
        m.insert("implicit".into(), implicit_json(&imp));
        let lines = singular_line_candidates(ideal, &r, &imp.reduced)?;
        m.insert("singular_lines".into(), lines_json(&lines));
        m.insert(
            "embedded_primes".into(),
            json!(r.embedded_primes.iter().map(|p| p.to_string()).collect::<Vec<_>>()),
        );
        let d = dual_report(ideal)?;
        let ok = cross_check(&d, &r);
        m.insert("dual".into(), dual_json(&d, ok));
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_sources() {
        assert_eq!(parse_window("4, 3"), Ok(BiDegree::new(4, 3)));
        assert!(parse_window("4").is_err());
        assert_eq!(resolve_window(None, None), Ok(DEFAULT_WINDOW));
        assert_eq!(resolve_window(None, Some("7,6")), Ok(BiDegree::new(7, 6)));
        assert_eq!(resolve_window(Some(BiDegree::new(5, 5)), Some("7,6")), Ok(BiDegree::new(5, 5)));
    }

    #[test]
    fn input_formats_agree() {
        let text = parse_input("s^2*u\n# comment\n\nt^2*v + s*t*v\n", "x").unwrap();
        let json = parse_input(r#"{"generators": ["s^2*u", "t^2*v+s*t*v"]}"#, "x").unwrap();
        assert_eq!(text.generators, json.generators);
        assert_eq!(text.generators.len(), 2);
    }

    #[test]
    fn input_errors() {
        assert_eq!(parse_input("{\"gens\": []}", "x").unwrap_err().0, EXIT_PARSE);
        assert_eq!(parse_input("s^2*u + u^2*s", "x").unwrap_err().0, EXIT_PARSE);
        assert_eq!(parse_input("{not json", "x").unwrap_err().0, EXIT_PARSE);
    }
}
