use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use vkbr::build::{build_ribbon, build_signed, find_switch_set};
use vkbr::diagram::Diagram;
use vkbr::random::{random_diagram, DiagramKind, RandomOptions};
use vkbr::ribbon::RibbonGraph;
use vkbr::verify::{verify_jones, verify_main, verify_signed, VerifyError};
use vkbr::{fixtures, LaurentPoly, SubgraphStats};

#[derive(Parser)]
#[command(name = "vkbr", version, about = "Kauffman bracket, ribbon graphs and the Bollobás-Riordan polynomial")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Kauffman bracket <L>(A, B, d) of a diagram.
    Bracket { file: PathBuf },
    /// Jones polynomial J(t) of a diagram.
    Jones { file: PathBuf },
    /// Checkerboard colorability and a switch set making the diagram alternating.
    Colorable { file: PathBuf },
    /// Ribbon graph of an alternating diagram.
    BuildRibbon(BuildArgs),
    /// Signed ribbon graph of a colorable diagram.
    BuildSigned(BuildArgs),
    /// Bollobás-Riordan polynomial of a ribbon graph (or of a diagram's ribbon graph).
    BrPoly {
        file: PathBuf,
        #[arg(long)]
        signed: bool,
    },
    /// Tutte polynomial via R(x-1, y-1, 1).
    Tutte { file: PathBuf },
    /// Genus of a ribbon graph.
    Genus { file: PathBuf },
    /// Check the bracket against the ribbon-graph side.
    Verify {
        file: PathBuf,
        #[arg(long, group = "mode")]
        main: bool,
        #[arg(long, group = "mode")]
        signed: bool,
        #[arg(long, group = "mode")]
        jones: bool,
    },
    /// Seeded random diagram.
    Random {
        #[arg(short)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, group = "kind")]
        alternating: bool,
        #[arg(long, group = "kind")]
        colorable: bool,
        /// Only single-component diagrams.
        #[arg(long)]
        knot: bool,
    },
    /// Run the built-in example fixtures.
    Selftest,
}

#[derive(Args)]
struct BuildArgs {
    file: PathBuf,
    /// Write the ribbon graph here and the crossing map to `<OUT>.map`.
    #[arg(short)]
    o: Option<PathBuf>,
}

enum Failure {
    Unequal,
    Input(String),
    NotColorable,
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Build(vkbr::build::BuildError::NotColorable) => Failure::NotColorable,
            other => Failure::Input(other.to_string()),
        }
    }
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_diagram(path: &Path) -> Result<Diagram, Failure> {
    Diagram::parse(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn is_ribbon_text(text: &str) -> bool {
    text.lines()
        .map(|l| l.split('#').next().unwrap().trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.starts_with('V') || l.starts_with('E'))
}

/// A ribbon graph file, or the (signed) ribbon graph of a diagram file.
fn load_ribbon(path: &Path) -> Result<RibbonGraph, Failure> {
    let text = read(path)?;
    if is_ribbon_text(&text) {
        return RibbonGraph::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())));
    }
    let d = Diagram::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    match build_signed(&d) {
        Ok(b) => Ok(b.graph),
        Err(vkbr::build::BuildError::NotColorable) => Err(Failure::NotColorable),
        Err(e) => Err(input(e)),
    }
}

fn stats_json(s: &SubgraphStats) -> Value {
    json!({ "v": s.v, "e": s.e, "k": s.k, "r": s.r, "n": s.n, "bc": s.bc, "genus": s.genus() })
}

struct Output {
    json: bool,
}

impl Output {
    fn emit(&self, text: impl std::fmt::Display, value: Value) {
        if self.json {
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        } else {
            println!("{text}");
        }
    }
}

fn poly_cmd(out: &Output, cmd: &str, file: &Path, p: LaurentPoly) {
    out.emit(&p, json!({ "command": cmd, "input": file, "polynomial": p.to_string() }));
}

fn run(cli: Cli) -> Result<(), Failure> {
    let out = Output { json: cli.json };
    match cli.cmd {
        Cmd::Bracket { file } => {
            let d = load_diagram(&file)?;
            poly_cmd(&out, "bracket", &file, d.kauffman_bracket().map_err(input)?);
        }
        Cmd::Jones { file } => {
            let d = load_diagram(&file)?;
            poly_cmd(&out, "jones", &file, d.jones().map_err(input)?);
        }
        Cmd::Colorable { file } => {
            let d = load_diagram(&file)?;
            let s = find_switch_set(&d);
            let text = match &s {
                Some(s) if s.is_empty() => "alternating".to_string(),
                Some(s) => format!("colorable; switch {:?}", s.crossings()),
                None => "not colorable".to_string(),
            };
            out.emit(
                text,
                json!({
                    "command": "colorable",
                    "input": file,
                    "colorable": s.is_some(),
                    "switches": s.as_ref().map(|s| s.crossings().to_vec()),
                }),
            );
            if s.is_none() {
                return Err(Failure::NotColorable);
            }
        }
        Cmd::BuildRibbon(args) => {
            let d = load_diagram(&args.file)?;
            let (g, map) = build_ribbon(&d).map_err(input)?;
            write_build(&out, "build-ribbon", &args, &g, &map.to_text(&g), &[])?;
        }
        Cmd::BuildSigned(args) => {
            let d = load_diagram(&args.file)?;
            let b = build_signed(&d).map_err(|e| Failure::from(VerifyError::from(e)))?;
            write_build(&out, "build-signed", &args, &b.graph, &b.map.to_text(&b.graph), b.switches.crossings())?;
        }
        Cmd::BrPoly { file, signed } => {
            let g = load_ribbon(&file)?;
            let p = if signed { g.signed_br_poly() } else { g.br_poly() }.map_err(input)?;
            let st = g.full_stats();
            out.emit(
                &p,
                json!({ "command": "br-poly", "input": file, "signed": signed,
                        "polynomial": p.to_string(), "stats": stats_json(&st) }),
            );
        }
        Cmd::Tutte { file } => {
            let g = load_ribbon(&file)?;
            poly_cmd(&out, "tutte", &file, g.tutte_via_br().map_err(input)?);
        }
        Cmd::Genus { file } => {
            let g = load_ribbon(&file)?;
            let st = g.full_stats();
            out.emit(
                st.genus(),
                json!({ "command": "genus", "input": file, "genus": st.genus(), "stats": stats_json(&st) }),
            );
        }
        Cmd::Verify { file, main, signed, jones } => {
            let d = load_diagram(&file)?;
            let equal = if jones {
                let rep = verify_jones(&d)?;
                let text = format!(
                    "direct:    {}\nnumerator: {}\ndenominator: (-t^(1/2) - t^(-1/2))^{}\nequal: {}",
                    rep.direct, rep.numerator, rep.denominator_power, rep.equal
                );
                let ok = rep.equal && rep.tutte_equal != Some(false);
                out.emit(text, json!({ "command": "verify", "mode": "jones", "input": file, "report": rep }));
                ok
            } else {
                let rep = if signed || !main && !d.is_alternating() {
                    verify_signed(&d)?
                } else {
                    verify_main(&d)?
                };
                let text = format!(
                    "bracket: {}\nribbon:  {}\nr={} n={} k={} switched={:?}\nequal: {}",
                    rep.left, rep.right, rep.r, rep.n, rep.k, rep.switched, rep.equal
                );
                let mode = if rep.switched.is_empty() && !signed { "main" } else { "signed" };
                out.emit(text, json!({ "command": "verify", "mode": mode, "input": file, "report": rep }));
                rep.equal
            };
            if !equal {
                return Err(Failure::Unequal);
            }
        }
        Cmd::Random { n, seed, alternating, colorable, knot } => {
            let kind = if alternating {
                DiagramKind::Alternating
            } else if colorable {
                DiagramKind::Colorable
            } else {
                DiagramKind::Any
            };
            let d = random_diagram(n, seed, RandomOptions { kind, knot }).map_err(input)?;
            let text = d.to_text();
            out.emit(
                text.trim_end(),
                json!({ "command": "random", "n": n, "seed": seed, "diagram": text }),
            );
        }
        Cmd::Selftest => {
            if !selftest(&out) {
                return Err(Failure::Unequal);
            }
        }
    }
    Ok(())
}

fn write_build(
    out: &Output,
    cmd: &str,
    args: &BuildArgs,
    g: &RibbonGraph,
    map: &str,
    switches: &[usize],
) -> Result<(), Failure> {
    let text = g.to_text();
    if let Some(path) = &args.o {
        std::fs::write(path, &text).map_err(input)?;
        let mut side = path.clone().into_os_string();
        side.push(".map");
        std::fs::write(&side, map).map_err(input)?;
    }
    let human = if args.o.is_some() {
        String::new()
    } else {
        let mapped: String = map.lines().map(|l| format!("# crossing {l}\n")).collect();
        format!("{text}{mapped}")
    };
    let value = json!({
        "command": cmd, "input": args.file, "ribbon": text, "map": map,
        "switches": switches, "stats": stats_json(&g.full_stats()),
    });
    if out.json || args.o.is_none() {
        out.emit(human.trim_end(), value);
    }
    Ok(())
}

fn selftest(out: &Output) -> bool {
    let d = fixtures::example_knot();
    let g = fixtures::example_ribbon();
    let abd = vkbr::diagram::bracket_vars();
    let xyz = vkbr::ribbon::br_vars();
    let checks: Vec<(&str, bool)> = vec![
        (
            "bracket of the 3-crossing example",
            d.kauffman_bracket().ok()
                == LaurentPoly::parse("A^3 + 3A^2Bd + 2AB^2 + AB^2d^2 + B^3d", &abd).ok(),
        ),
        ("jones of the 3-crossing example is 1", d.jones().map(|j| j.is_one()).unwrap_or(false)),
        (
            "br-poly of the 2-vertex example",
            g.br_poly().ok() == LaurentPoly::parse("y^2z^2 + 3y + 2 + xy + x", &xyz).ok(),
        ),
        ("main identity on the example", verify_main(&d).map(|r| r.equal).unwrap_or(false)),
        (
            "signed identity with a switched crossing",
            verify_signed(&d.switched(&[0])).map(|r| r.equal).unwrap_or(false),
        ),
        ("jones routes agree", verify_jones(&d).map(|r| r.equal).unwrap_or(false)),
        ("virtual hopf link not colorable", find_switch_set(&fixtures::virtual_hopf()).is_none()),
    ];
    let ok = checks.iter().all(|(_, b)| *b);
    let text: Vec<String> = checks
        .iter()
        .map(|(name, b)| format!("{} {name}", if *b { "PASS" } else { "FAIL" }))
        .collect();
    out.emit(
        text.join("\n"),
        json!({ "command": "selftest", "checks": checks.iter().map(|(n, b)| json!({"name": n, "pass": b})).collect::<Vec<_>>(), "pass": ok }),
    );
    ok
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Unequal) => {
            eprintln!("identity check failed");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::NotColorable) => {
            eprintln!("error: diagram is not checkerboard colorable");
            ExitCode::from(3)
        }
    }
}
