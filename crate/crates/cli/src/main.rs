mod suite;
mod svg;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gcg::degeneration::{self, GenusData};
use gcg::families::{self, Kind, Part};
use gcg::gauss::{self, GaussError};
use gcg::graph::GraphData;
use gcg::numerology::{self, GammaSource};
use gcg::planes::{self, LineNumbering, PlaneConfig};
use gcg::{IntGaussianMatrix, TrivalentPlanarGraph};
use serde_json::{json, Value};

const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Parser)]
#[command(
    name = "gcg",
    version,
    about = "Graph curves, plane configurations and Gaussian coranks"
)]
struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    /// Seed for prime selection and shuffles; GCG_SEED overrides the default.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyKind {
    Standard,
    Prism,
    Tilde,
}

impl From<FamilyKind> for Kind {
    fn from(k: FamilyKind) -> Kind {
        match k {
            FamilyKind::Standard => Kind::Standard,
            FamilyKind::Prism => Kind::Prism,
            FamilyKind::Tilde => Kind::Tilde,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Json,
    Dot,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a family graph.
    Family {
        #[arg(long, value_enum, default_value_t = FamilyKind::Standard)]
        kind: FamilyKind,
        #[arg(long)]
        genus: usize,
        #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
        format: GraphFormat,
        /// Colour an SVG by the two-path decomposition (standard graphs).
        #[arg(long)]
        decomposition: bool,
    },
    /// Check a graph JSON file.
    Validate { file: PathBuf },
    /// Hilbert functions of the plane configuration of a graph, its two
    /// chains and their double curve.
    Hilbert {
        #[arg(long)]
        genus: Option<usize>,
        #[arg(long, value_enum, default_value_t = FamilyKind::Standard)]
        kind: FamilyKind,
        /// Read a configuration JSON instead of building one.
        #[arg(long, conflicts_with = "genus")]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        max_degree: u64,
    },
    /// Gaussian map corank with a rank certificate.
    Corank {
        #[arg(long, required_unless_present = "graph")]
        genus: Option<usize>,
        #[arg(long, value_enum, default_value_t = FamilyKind::Standard)]
        kind: FamilyKind,
        /// Use a graph JSON file instead of a family.
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Exit 1 unless the corank equals N.
        #[arg(long, value_name = "N")]
        expect_corank: Option<usize>,
        /// Rebuild the matrix under a random change of conventions.
        #[arg(long, value_name = "SEED")]
        shuffle: Option<u64>,
        /// Write the matrix as CSV.
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Degenerations of the two scrolls onto the configuration.
    Degeneration {
        #[arg(long)]
        genus: usize,
        /// Use the data for the tilde graphs (g = 7, 8).
        #[arg(long)]
        tilde: bool,
    },
    /// Dimension counts.
    Numerology {
        #[arg(long)]
        genus: Option<usize>,
        /// Check the moduli table.
        #[arg(long)]
        table2: bool,
        #[arg(long, requires = "genus")]
        gamma: Option<usize>,
        #[arg(long, requires = "genus")]
        tail: Option<usize>,
    },
    /// Run every acceptance check.
    Suite {
        #[arg(long, default_value = "7..20")]
        genus: String,
    },
}

enum Failure {
    /// A check ran and came out negative.
    Check(String),
    /// Bad input or unsupported request.
    Input(String),
    /// Exact arithmetic contradicted itself.
    Invariant(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Input(_) => 2,
            Failure::Invariant(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Check(m) | Failure::Input(m) | Failure::Invariant(m) => m,
        }
    }
}

fn input<E: ToString>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn from_gauss(e: GaussError) -> Failure {
    match e {
        GaussError::BackendDisagreement(_) | GaussError::Exact(_) => {
            Failure::Invariant(e.to_string())
        }
        other => Failure::Input(other.to_string()),
    }
}

fn seed(cli: &Cli) -> u64 {
    cli.seed
        .or_else(|| std::env::var("GCG_SEED").ok().and_then(|s| s.parse().ok()))
        .unwrap_or(DEFAULT_SEED)
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json value"));
}

fn parse_range(s: &str) -> Result<std::ops::RangeInclusive<usize>, Failure> {
    let bad = || Failure::Input(format!("genus range {s:?}: expected A..B or A"));
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.trim_start_matches('=');
            let (a, b): (usize, usize) =
                (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
            if a > b {
                return Err(bad());
            }
            Ok(a..=b)
        }
        None => {
            let a = s.parse().map_err(|_| bad())?;
            Ok(a..=a)
        }
    }
}

fn load_graph(path: &PathBuf) -> Result<TrivalentPlanarGraph, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    TrivalentPlanarGraph::from_json(&text).map_err(input)
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let seed = seed(cli);
    let json_out = cli.output == Output::Json;
    match &cli.command {
        Command::Family {
            kind,
            genus,
            format,
            decomposition,
        } => {
            let graph = families::graph_of((*kind).into(), *genus).map_err(input)?;
            match format {
                GraphFormat::Json => println!("{}", graph.to_json()),
                GraphFormat::Dot => print!("{}", graph.to_dot()),
                GraphFormat::Svg => {
                    let decomp = if *decomposition {
                        if *kind != FamilyKind::Standard {
                            return Err(Failure::Input(
                                "decompositions exist for standard graphs only".into(),
                            ));
                        }
                        Some(families::ab_decomposition(*genus).map_err(input)?)
                    } else {
                        None
                    };
                    print!("{}", svg::export_svg(&graph, decomp.as_ref()));
                }
            }
            Ok(())
        }
        Command::Validate { file } => {
            let text = fs::read_to_string(file)
                .map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
            let data = GraphData::from_json(&text).map_err(input)?;
            let report = gcg::validate(&data);
            if json_out {
                print_json(&json!({
                    "checks": report.checks,
                    "genus": report.genus,
                    "schema": gcg::SCHEMA,
                    "valid": report.is_valid(),
                }));
            } else {
                print!("{report}");
            }
            if report.is_valid() {
                Ok(())
            } else {
                Err(Failure::Check(report.failures().join("; ")))
            }
        }
        Command::Hilbert {
            genus,
            kind,
            config,
            max_degree,
        } => hilbert(*genus, *kind, config.as_ref(), *max_degree, json_out),
        Command::Corank {
            genus,
            kind,
            graph,
            expect_corank,
            shuffle,
            csv,
        } => {
            let g = match graph {
                Some(p) => load_graph(p)?,
                None => families::graph_of((*kind).into(), genus.expect("clap requires genus"))
                    .map_err(input)?,
            };
            gauss::target_dimension(&g).map_err(from_gauss)?;
            let m: IntGaussianMatrix = match shuffle {
                Some(s) => gauss::convention_shuffle(&g, *s),
                None => gauss::gaussian_matrix(&g),
            };
            if let Some(path) = csv {
                fs::write(path, m.to_csv())
                    .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            }
            let cert = gauss::corank(&m, seed).map_err(from_gauss)?;
            if json_out {
                println!("{}", cert.to_json());
            } else {
                println!(
                    "genus {}: rank {} of {} rows, corank {}",
                    cert.genus, cert.rank, cert.target_dim, cert.corank
                );
                for b in &cert.backends {
                    match b.prime {
                        Some(p) => println!("  {} mod {p}: {}", b.kind, b.rank),
                        None => println!("  {}: {}", b.kind, b.rank),
                    }
                }
            }
            match expect_corank {
                Some(n) if *n != cert.corank => Err(Failure::Check(format!(
                    "corank {} differs from expected {n}",
                    cert.corank
                ))),
                _ => Ok(()),
            }
        }
        Command::Degeneration { genus, tilde } => degeneration_cmd(*genus, *tilde, json_out),
        Command::Numerology {
            genus,
            table2,
            gamma,
            tail,
        } => numerology_cmd(*genus, *table2, *gamma, *tail, json_out),
        Command::Suite { genus } => {
            let range = parse_range(genus)?;
            let report = suite::run(range, seed).map_err(|e| match e {
                suite::SuiteError::Invariant(m) => Failure::Invariant(m),
                suite::SuiteError::Setup(m) => Failure::Input(m),
            })?;
            if json_out {
                print_json(&report.to_json());
            } else {
                print!("{}", suite::render_text(&report));
            }
            if report.passed() {
                Ok(())
            } else {
                let failed: Vec<String> = report
                    .lines
                    .iter()
                    .filter(|l| !l.passed)
                    .map(|l| l.id.to_string())
                    .collect();
                Err(Failure::Check(format!(
                    "criteria failed: {}",
                    failed.join(", ")
                )))
            }
        }
    }
}

fn hilbert_values(config: &PlaneConfig, max_degree: u64) -> Vec<u64> {
    (0..=max_degree)
        .map(|d| planes::hilbert_function(config, d))
        .collect()
}

fn hilbert(
    genus: Option<usize>,
    kind: FamilyKind,
    config: Option<&PathBuf>,
    max_degree: u64,
    json_out: bool,
) -> Result<(), Failure> {
    if let Some(path) = config {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        let c = PlaneConfig::from_json(&text).map_err(input)?;
        let h = hilbert_values(&c, max_degree);
        if json_out {
            print_json(&json!({"f_vector": c.f_vector(), "hilbert": h, "schema": gcg::SCHEMA}));
        } else {
            println!("f-vector {:?}", c.f_vector());
            println!("h(d), d = 0..{max_degree}: {h:?}");
        }
        return Ok(());
    }
    let g = genus.ok_or_else(|| Failure::Input("give --genus or --config".into()))?;
    let graph = families::graph_of(kind.into(), g).map_err(input)?;
    let s_g = planes::config_from_graph(&graph).map_err(input)?;
    let mut out = json!({
        "genus": g,
        "schema": gcg::SCHEMA,
        "surface": {"f_vector": s_g.f_vector(), "hilbert": hilbert_values(&s_g, max_degree)},
    });
    let mut text = format!(
        "configuration: f-vector {:?}\n  h(d) = {:?}\n",
        s_g.f_vector(),
        hilbert_values(&s_g, max_degree)
    );
    if kind == FamilyKind::Standard {
        let decomp = families::ab_decomposition(g).map_err(input)?;
        let a = planes::chain_config(&s_g, &decomp, Part::A).map_err(input)?;
        let b = planes::chain_config(&s_g, &decomp, Part::B).map_err(input)?;
        let curve = planes::double_curve(&a, &b).map_err(input)?;
        let numbering = LineNumbering::for_chain(&curve, &a).map_err(input)?;
        let labels_a: Vec<usize> = decomp.part_a.iter().map(|v| v + 1).collect();
        let table = planes::span_table(&a, &labels_a, &numbering).map_err(input)?;
        out["chain_a"] = json!({"hilbert": hilbert_values(&a, max_degree), "spans": table.rows});
        out["chain_b"] = json!({"hilbert": hilbert_values(&b, max_degree)});
        out["double_curve"] = json!({"hilbert": hilbert_values(&curve, max_degree)});
        text.push_str(&format!(
            "chain A: h(d) = {:?}\n",
            hilbert_values(&a, max_degree)
        ));
        text.push_str(&format!(
            "chain B: h(d) = {:?}\n",
            hilbert_values(&b, max_degree)
        ));
        text.push_str(&format!(
            "double curve: h(d) = {:?}\n",
            hilbert_values(&curve, max_degree)
        ));
        text.push_str(&format!("spans of chain A:\n{table}"));
    }
    if json_out {
        print_json(&out);
    } else {
        print!("{text}");
    }
    Ok(())
}

fn chain_json(data: &GenusData, corr: &gcg::DoubleCorrespondence) -> Value {
    let compat = degeneration::is_compatible(&data.survivors, corr);
    let planes = degeneration::limit_planes(&data.survivors, corr)
        .ok()
        .map(|c| c.planes);
    json!({
        "anchor": format!("{:?}", corr.anchor),
        "c": corr.c,
        "compatibility": compat,
        "kind": corr.kind.to_string(),
        "planes": planes,
    })
}

fn degeneration_cmd(g: usize, tilde: bool, json_out: bool) -> Result<(), Failure> {
    let data = if tilde {
        degeneration::tilde_data(g)
    } else {
        degeneration::standard_data(g)
    }
    .map_err(|e| Failure::Check(e.to_string()))?;
    let (target, colors) = if tilde {
        let t = families::tilde_graph(g).map_err(input)?;
        (planes::config_from_graph(&t).map_err(input)?, None)
    } else {
        let s = families::standard_graph(g).map_err(input)?;
        let d = families::ab_decomposition(g).map_err(input)?;
        (
            planes::config_from_graph(&s).map_err(input)?,
            Some(d.colors()),
        )
    };
    let report = degeneration::verify_union(&data, &target, colors.as_deref())
        .map_err(|e| Failure::Check(e.to_string()))?;
    if json_out {
        print_json(&json!({
            "a": chain_json(&data, &data.a),
            "b": chain_json(&data, &data.b),
            "genus": g,
            "isomorphic": report.isomorphic,
            "k": data.cycle().k,
            "mismatch": report.mismatch,
            "name": data.name,
            "schema": gcg::SCHEMA,
            "survivors": data.survivors.labels,
        }));
    } else {
        println!("{} (k = {})", data.name, data.cycle().k);
        println!("survivors: {:?}", data.survivors.labels);
        for (name, corr) in [("A", &data.a), ("B", &data.b)] {
            let compat = degeneration::is_compatible(&data.survivors, corr);
            println!(
                "{name}: kind {} c = {}, {}",
                corr.kind,
                corr.c,
                if compat.compatible {
                    "compatible"
                } else {
                    "INCOMPATIBLE"
                }
            );
            for v in &compat.violations {
                println!("  {v}");
            }
            if let Ok(chain) = degeneration::limit_planes(&data.survivors, corr) {
                for p in &chain.planes {
                    println!(
                        "  {:?} {:<10} points {:?}",
                        p.kind,
                        p.span.to_string(),
                        p.points
                    );
                }
            }
        }
        match &report.mismatch {
            None => println!("union isomorphic to the target configuration"),
            Some(m) => println!("union differs from the target: {m}"),
        }
    }
    if report.isomorphic {
        Ok(())
    } else {
        Err(Failure::Check(
            "limit union is not the target configuration".into(),
        ))
    }
}

fn numerology_cmd(
    genus: Option<usize>,
    table2: bool,
    gamma: Option<usize>,
    tail: Option<usize>,
    json_out: bool,
) -> Result<(), Failure> {
    let mut ok = true;
    let mut out = json!({"schema": gcg::SCHEMA});
    let genera: Vec<usize> = match genus {
        Some(g) => vec![g],
        None if table2 => Vec::new(),
        None => (6..=20).collect(),
    };
    let reports: Vec<_> = genera
        .iter()
        .map(|&g| {
            if gamma.is_some() || tail.is_some() {
                let (gm, src) = match gamma {
                    Some(v) => (Some(v), Some(GammaSource::Given)),
                    None => match numerology::default_gamma(g) {
                        Some((v, s)) => (Some(v), Some(s)),
                        None => (None, None),
                    },
                };
                numerology::dimensions_with(
                    g,
                    gm,
                    src,
                    tail.unwrap_or_else(|| numerology::default_tail(g)),
                )
            } else {
                numerology::dimensions(g)
            }
        })
        .collect();
    ok &= reports.iter().all(|r| r.consistent);
    if !json_out {
        for r in &reports {
            println!(
                "g={:>2}  dim H={} C={} F={}  γ={} tail={}  fiber={}  cone codim={}  {}",
                r.genus,
                r.dim_h,
                r.dim_c,
                r.dim_f,
                r.gamma.map_or("?".into(), |v| v.to_string()),
                r.tail,
                r.fiber.as_ref().map_or("?".into(), |f| f.value.to_string()),
                r.cone_codim,
                if r.consistent { "ok" } else { "INCONSISTENT" }
            );
        }
    }
    out["dimensions"] = json!(reports);
    if table2 {
        let rows = numerology::moduli_table();
        ok &= rows.iter().all(|r| r.consistent);
        if !json_out {
            println!("  g  moduli  params  γ  moduli+PGL  bound");
            for r in &rows {
                println!(
                    "{:>3}  {:>6}  {:>6}  {:>2}  {:>10}  {:>5}  {}",
                    r.row.genus,
                    r.row.moduli,
                    r.row.parameters,
                    r.row.gamma,
                    r.moduli_plus_group,
                    r.bound,
                    if r.consistent { "ok" } else { "INCONSISTENT" }
                );
            }
        }
        out["moduli_table"] = json!(rows);
    }
    if json_out {
        print_json(&out);
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Check("dimension counts inconsistent".into()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("gcg: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
