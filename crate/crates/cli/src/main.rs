use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rtkirby::census::{validate, Census, CensusError};
use rtkirby::cover::build_double_cover;
use rtkirby::cusps::{cusp_reports, default_fillings};
use rtkirby::groups::{add_relations, tietze_simplify, DEFAULT_MAX_COSETS};
use rtkirby::kirby::{
    base_fillings, build_base_diagram, build_cover_diagram, export_json, export_svg, invariant_report, lift_fillings,
    simplification_trace, KirbyDiagram, PanelTag, Script, Stage,
};
use rtkirby::polytope24::polytope;

#[derive(Parser)]
#[command(
    name = "rtkirby",
    version,
    about = "Side-pairing codes of the ideal 24-cell: cycles, covers, fillings and Kirby diagrams"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the document here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Coset limit for order computations.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_COSETS)]
    max_cosets: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Poincaré conditions for a code.
    Validate { code: String },
    /// List the twelve side pairings.
    Pairings { code: String },
    /// Ridge cycles, one row per 2-handle.
    Cycles { code: String },
    /// Fundamental group presentation.
    Presentation {
        code: String,
        /// Add the filling words as relators.
        #[arg(long)]
        fill: bool,
        /// Simplify with Tietze moves.
        #[arg(long)]
        simplify: bool,
    },
    /// Cusp classes, stabilizers, translations and flat types.
    Cusps { code: String },
    /// The orientable double cover built from two copies of the polytope.
    Cover {
        code: String,
        #[arg(long, default_value_t = 'g')]
        alpha: char,
    },
    /// Euler characteristic, homology and group order at each stage.
    Invariants {
        code: String,
        #[arg(long)]
        stage: Option<Stage>,
        #[arg(long, default_value_t = 'g')]
        alpha: char,
    },
    /// Kirby diagram of the manifold or its double cover.
    Kirby {
        code: String,
        #[arg(long)]
        cover: bool,
        #[arg(long)]
        fill: bool,
        #[arg(long, default_value_t = 'g')]
        alpha: char,
        /// Panel drawn by the svg format.
        #[arg(long, default_value = "xy")]
        panel: PanelTag,
    },
    /// Replay a shipped simplification script.
    Trace {
        code: String,
        #[arg(long)]
        script: String,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(s) | Failure::Domain(s) => f.write_str(s),
        }
    }
}

fn domain<E: fmt::Display>(e: E) -> Failure {
    Failure::Domain(e.to_string())
}

fn census(code: &str) -> Result<Census, Failure> {
    Census::from_code(code).map_err(|e| match e {
        CensusError::Parse(_) => Failure::Usage(e.to_string()),
        _ => Failure::Domain(e.to_string()),
    })
}

enum Doc {
    Text(String),
    Json(Value),
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values print")
}

fn run(cli: &Cli) -> Result<Doc, Failure> {
    let json = cli.format == Format::Json;
    if cli.format == Format::Svg && !matches!(cli.command, Command::Kirby { .. }) {
        return Err(Failure::Usage("svg output is only available for the kirby subcommand".into()));
    }
    Ok(match &cli.command {
        Command::Validate { code } => {
            let r = validate(code);
            if let Some(CensusError::Parse(_)) = &r.error {
                return Err(Failure::Usage(r.error.expect("checked").to_string()));
            }
            if !r.passed {
                return Err(Failure::Domain(r.to_string()));
            }
            if json {
                Doc::Json(serde_json::to_value(&r).map_err(domain)?)
            } else {
                Doc::Text(r.to_string())
            }
        }
        Command::Pairings { code } => {
            let c = census(code)?;
            if json {
                let rows: Vec<Value> = c
                    .pairings
                    .iter()
                    .map(|p| {
                        json!({
                            "letter": p.letter.to_string(),
                            "source": polytope().sides[p.source].label,
                            "target": polytope().sides[p.target].label,
                            "k": p.kpart,
                            "eps": c.eps.of_gen(&p.letter.to_string()).unwrap_or(0),
                            "word": p.word.to_string(),
                        })
                    })
                    .collect();
                Doc::Json(json!({ "code": c.code, "pairings": rows }))
            } else {
                let mut s = String::new();
                for p in &c.pairings {
                    let e = c.eps.of_gen(&p.letter.to_string()).unwrap_or(0);
                    s.push_str(&format!("{}  {}\n", p.describe(), if e < 0 { "reversing" } else { "preserving" }));
                }
                Doc::Text(s)
            }
        }
        Command::Cycles { code } => {
            let c = census(code)?;
            let rows: Vec<String> = c.cycles.iter().map(|cy| c.cycle_row(cy)).collect();
            if json {
                let rels: Vec<String> = c.cycles.iter().map(|cy| cy.relator.to_text()).collect();
                Doc::Json(json!({ "code": c.code, "rows": rows, "relators": rels }))
            } else {
                Doc::Text(rows.iter().enumerate().map(|(i, r)| format!("{:>2}  {r}\n", i + 1)).collect())
            }
        }
        Command::Presentation { code, fill, simplify } => {
            let c = census(code)?;
            let mut p = c.presentation();
            if *fill {
                let f = default_fillings(&c).map_err(domain)?;
                p = add_relations(&p, &f.base).map_err(domain)?;
            }
            if *simplify {
                p = tietze_simplify(&p, 64);
            }
            if json {
                Doc::Json(p.to_json())
            } else {
                Doc::Text(format!("{p}\n"))
            }
        }
        Command::Cusps { code } => {
            let c = census(code)?;
            let reports = cusp_reports(&c).map_err(domain)?;
            let fills = default_fillings(&c).map_err(domain)?;
            if json {
                Doc::Json(json!({
                    "cusps": reports,
                    "fillings": {
                        "base": fills.base.iter().map(|w| w.to_text()).collect::<Vec<_>>(),
                        "cover": fills.cover.iter().map(|w| w.to_text()).collect::<Vec<_>>(),
                    },
                }))
            } else {
                let p = polytope();
                let mut s = String::new();
                for (i, r) in reports.iter().enumerate() {
                    s.push_str(&format!("cusp {}: {}\n", i + 1, r.vertices));
                    s.push_str(&format!("  representative {}\n", r.representative));
                    s.push_str(&format!(
                        "  stabilizer: {} loop generators, {} relators\n",
                        r.stabilizer.generators.len(),
                        r.stabilizer.presentation.relators.len()
                    ));
                    s.push_str(&format!(
                        "  cross-section: {}, holonomy order {}, H1 = {}, type {}\n",
                        if r.invariants.orientable { "orientable" } else { "non-orientable" },
                        r.invariants.holonomy_order,
                        r.invariants.h1,
                        r.invariants.label
                    ));
                    match &r.filling.translation {
                        Some(t) => s.push_str(&format!(
                            "  translation {} at {} ({} alternates)\n",
                            t.word.to_text(),
                            p.vertices[t.vertex].label(),
                            r.filling.alternates.len()
                        )),
                        None => s.push_str("  no translation of length <= 4\n"),
                    }
                    if let Some(w) = fills.base.get(i) {
                        s.push_str(&format!("  filled along {}\n", w.to_text()));
                    }
                }
                Doc::Text(s)
            }
        }
        Command::Cover { code, alpha } => {
            let c = census(code)?;
            let cov = build_double_cover(&c, *alpha).map_err(domain)?;
            let rows: Vec<String> = cov.cycles.iter().map(|cy| cov.cycle_row(cy)).collect();
            if json {
                let sides: Vec<Value> = (0..48)
                    .map(rtkirby::cover::CoverSide::from_index)
                    .map(|s| json!({ "label": s.label(), "layout": cov.layout(s) }))
                    .collect();
                Doc::Json(json!({
                    "code": c.code,
                    "alpha": alpha.to_string(),
                    "sides": sides,
                    "boundary_sides": cov.boundary_sides().iter().map(|s| s.label()).collect::<Vec<_>>(),
                    "pairings": cov.pairings,
                    "cycles": rows,
                    "presentation": cov.presentation().to_json(),
                }))
            } else {
                let mut s = String::new();
                for p in &cov.pairings {
                    s.push_str(&format!(
                        "{:<4} {} -> {}  from {} ({:?}){}\n",
                        p.name,
                        p.source.label(),
                        p.target.label(),
                        p.base_letter,
                        p.rule,
                        if p.trivial { "  interior wall" } else { "" }
                    ));
                }
                for (i, r) in rows.iter().enumerate() {
                    s.push_str(&format!("{:>2}  {r}\n", i + 1));
                }
                Doc::Text(s)
            }
        }
        Command::Invariants { code, stage, alpha } => {
            let c = census(code)?;
            let stages: Vec<Stage> = match stage {
                Some(s) => vec![*s],
                None => Stage::ALL.to_vec(),
            };
            let reports = stages
                .iter()
                .map(|s| invariant_report(&c, *s, *alpha, cli.max_cosets).map_err(domain))
                .collect::<Result<Vec<_>, _>>()?;
            if json {
                Doc::Json(serde_json::to_value(&reports).map_err(domain)?)
            } else {
                Doc::Text(reports.iter().map(|r| format!("{r}\n\n")).collect())
            }
        }
        Command::Kirby { code, cover, fill, alpha, panel } => {
            let c = census(code)?;
            let d = diagram(&c, *cover, *fill, *alpha)?;
            match cli.format {
                Format::Svg => Doc::Text(export_svg(&d, *panel)),
                Format::Json => Doc::Json(export_json(&d)),
                Format::Text => {
                    let mut s = format!(
                        "handles by index: {:?}; euler characteristic {}\n",
                        d.handle_counts(),
                        d.euler_characteristic()
                    );
                    for t in PanelTag::ALL {
                        s.push_str(&format!("{t} panel: {} 2-handles\n", d.panel_count(t)));
                    }
                    for h in &d.two_handles {
                        s.push_str(&format!("{:<8} {:<4} {}\n", h.id, h.panel.to_string(), h.word.to_tokens()));
                    }
                    Doc::Text(s)
                }
            }
        }
        Command::Trace { code, script } => {
            let c = census(code)?;
            let sc = Script::shipped(script).map_err(|e| Failure::Usage(e.to_string()))?;
            if sc.code != c.code {
                return Err(Failure::Domain(format!("script {} is for code {}", sc.name, sc.code)));
            }
            let d = diagram(&c, true, true, sc.alpha)?;
            let r = simplification_trace(&d, &sc.steps).map_err(domain)?;
            if json {
                Doc::Json(json!({
                    "script": sc.name,
                    "trace": r.diagram.trace,
                    "handles": r.diagram.handle_counts(),
                    "presentation": r.presentation.to_json(),
                }))
            } else {
                let mut s = String::new();
                for ev in &r.diagram.trace {
                    s.push_str(&format!(
                        "{:>3} {:<7} {:<24} 1h={:<2} 2h={:<2} 3h={:<2} H1={}\n",
                        ev.step, ev.op, ev.detail, ev.one_handles, ev.two_handles, ev.three_handles, ev.h1
                    ));
                }
                s.push_str(&format!("handles by index: {:?}\n", r.diagram.handle_counts()));
                s.push_str(&format!("final presentation: {}\n", r.presentation));
                Doc::Text(s)
            }
        }
    })
}

fn diagram(c: &Census, cover: bool, fill: bool, alpha: char) -> Result<KirbyDiagram, Failure> {
    let fills = if fill { Some(default_fillings(c).map_err(domain)?) } else { None };
    if cover {
        let cov = build_double_cover(c, alpha).map_err(domain)?;
        let f = match &fills {
            Some(t) => lift_fillings(&cov, &t.cover).map_err(domain)?,
            None => Vec::new(),
        };
        build_cover_diagram(&cov, &f).map_err(domain)
    } else {
        let f = fills.map(|t| base_fillings(&t.base)).unwrap_or_default();
        build_base_diagram(c, &f).map_err(domain)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(doc) => {
            let text = match doc {
                Doc::Text(s) => s,
                Doc::Json(v) => pretty(&v) + "\n",
            };
            match &cli.output {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
