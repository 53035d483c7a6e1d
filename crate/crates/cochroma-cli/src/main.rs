//! Command-line surface over the cochroma library.
//!
//! Exit codes: 0 = success / property verified; 1 = computed cleanly but the
//! property is false (map infeasible, expansions differ, axiom violated);
//! 2 = usage or input error.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cochroma::csf::{
    antipode_humpert_martin, antipode_schmitt, csf, csf_of_graphsum, csf_oracle, routes_agree,
};
use cochroma::graph::binary_clique_graph;
use cochroma::io;
use cochroma::kromatic::{ksf_mbar, ksf_omega_p, ksf_oracle, mbar_to_monomial};
use cochroma::morphism::{
    all_cliques_spec, binary_clique_classes, family_closure_check, identity_spec, solve_for_graph,
    spec_from_classes, triangle_free_spec, verify_commuting_diagram, verify_complement_map,
    MorphismSpec, SolveOutcome,
};
use cochroma::partition::Partition;
use cochroma::series::{hopf_axiom_check, Algebra, Basis, Series};
use cochroma::WeightedGraph;

#[derive(Parser)]
#[command(
    name = "cochroma",
    version,
    about = "Exact chromatic/Kromatic symmetric functions and graph-complement morphisms"
)]
struct Cli {
    /// Emit a machine-readable JSON report instead of text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Chromatic symmetric function of a graph file
    Csf {
        #[arg(long)]
        graph: PathBuf,
        /// Target basis: p, m, mtilde, or e
        #[arg(long, default_value = "p")]
        basis: String,
    },
    /// Kromatic symmetric function of a graph file
    Ksf {
        #[arg(long)]
        graph: PathBuf,
        /// Expansion: mbar (exact), monomial (truncated oracle), or omegap
        #[arg(long, default_value = "mbar")]
        route: String,
        /// Truncation degree for the capped routes
        #[arg(long, default_value_t = 8)]
        cap: u32,
    },
    /// Convert a series file to another basis
    Convert {
        #[arg(long)]
        series: PathBuf,
        #[arg(long)]
        to: String,
    },
    /// Complement of a graph file (prints the complement as a graph file)
    Complement {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Solve for the morphism coefficients a_n demanded by one graph
    SolveMap {
        #[arg(long)]
        graph: PathBuf,
        /// Branch budget for the exact solver
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
    },
    /// Verify that a map sends the graph's CSF to its complement's
    VerifyMap {
        #[arg(long)]
        graph: PathBuf,
        /// Class configuration file defining the map
        #[arg(long, conflicts_with_all = ["triangle_free", "all_cliques", "identity"])]
        class_config: Option<PathBuf>,
        /// Use the built-in triangle-free map (a1=1, a2=-1, rest 0)
        #[arg(long)]
        triangle_free: bool,
        /// Use the built-in all-cliques map (a_n = (-1)^(n-1)/(n-1)!)
        #[arg(long, conflicts_with = "triangle_free")]
        all_cliques: bool,
        /// Use the identity map (a_n = 1)
        #[arg(long, conflicts_with_all = ["triangle_free", "all_cliques"])]
        identity: bool,
    },
    /// Verify the two-sided restriction identity phi(X_G) = theta(X_comp(G))
    VerifyDiagram {
        #[arg(long)]
        graph: PathBuf,
        /// Weights sent to +mtilde (comma-separated)
        #[arg(long, value_delimiter = ',', default_value = "1")]
        v_set: Vec<u32>,
        /// Weights sent to -mtilde (comma-separated)
        #[arg(long, value_delimiter = ',', default_value = "2")]
        e_set: Vec<u32>,
        /// Weights killed by both maps; omit for "all remaining weights"
        #[arg(long, value_delimiter = ',')]
        c_set: Option<Vec<u32>>,
    },
    /// Build a binary-expansion clique-path family member; optionally verify
    /// the family closure and the class-derived complement map up to it
    Family {
        /// The member index n (vertex weights = binary expansion of n)
        #[arg(long)]
        binary_clique: u64,
        /// Blocks of powers of two, e.g. "{1,2,4}" or "{1,2,4};{16,32,64}"
        #[arg(long, default_value = "{1,2,4}")]
        b: String,
        /// Allow blocks to overlap
        #[arg(long)]
        allow_overlap: bool,
        /// Run the closure check and the map verification for members 1..=n
        #[arg(long)]
        verify: bool,
    },
    /// Check the Hopf axioms on the CSF of a graph or on a basis element
    HopfCheck {
        #[arg(long, conflicts_with = "element")]
        graph: Option<PathBuf>,
        /// A basis element, e.g. "p:3,1" or "mtilde:2,2,1"
        #[arg(long)]
        element: Option<String>,
        /// Ambient algebra: lambda or lambda-tilde
        #[arg(long, default_value = "lambda")]
        algebra: String,
    },
    /// Antipode of a graph as a formal sum of graphs
    Antipode {
        #[arg(long)]
        graph: PathBuf,
        /// schmitt, humpert-martin, or both (checks their agreement)
        #[arg(long, default_value = "both")]
        method: String,
    },
    /// Cross-check the computed expansions against the brute-force oracles
    OracleCheck {
        #[arg(long)]
        graph: PathBuf,
        /// Also check the Kromatic routes up to this degree
        #[arg(long)]
        cap: Option<u32>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {}", err);
            ExitCode::from(2)
        }
    }
}

fn read_graph(path: &Path) -> anyhow::Result<WeightedGraph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| anyhow::anyhow!("cannot read {}: {}", path.display(), e))?;
    Ok(io::graph_from_json(&text)?)
}

fn parse_basis(name: &str) -> anyhow::Result<Basis> {
    Basis::parse(name).ok_or_else(|| anyhow::anyhow!("unknown basis `{}` (p, m, mtilde, e)", name))
}

fn parse_blocks(text: &str) -> anyhow::Result<Vec<BTreeSet<u64>>> {
    let mut out = Vec::new();
    for chunk in text.split(';') {
        let chunk = chunk.trim();
        let inner = chunk
            .strip_prefix('{')
            .and_then(|c| c.strip_suffix('}'))
            .ok_or_else(|| anyhow::anyhow!("block `{}` must be braced like {{1,2,4}}", chunk))?;
        let mut set = BTreeSet::new();
        for item in inner.split(',') {
            let n: u64 = item
                .trim()
                .parse()
                .map_err(|_| anyhow::anyhow!("block entry `{}` is not a positive integer", item))?;
            set.insert(n);
        }
        out.push(set);
    }
    Ok(out)
}

fn parse_element(text: &str) -> anyhow::Result<(Basis, Partition)> {
    let (basis, parts) =
        text.split_once(':').ok_or_else(|| anyhow::anyhow!("element must look like `p:3,1`"))?;
    let basis = parse_basis(basis)?;
    let parts: Vec<u32> = if parts.trim().is_empty() {
        Vec::new()
    } else {
        parts
            .split(',')
            .map(|x| x.trim().parse().map_err(|_| anyhow::anyhow!("bad part `{}` in element", x)))
            .collect::<anyhow::Result<_>>()?
    };
    Ok((basis, Partition::from_parts(parts)?))
}

fn verdict(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Csf { graph, basis } => {
            let g = read_graph(&graph)?;
            let basis = parse_basis(&basis)?;
            let series = csf(&g, basis)?;
            if cli.json {
                println!("{}", io::series_to_json(&series));
            } else {
                println!("X_G = {}", series);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Ksf { graph, route, cap } => {
            let g = read_graph(&graph)?;
            let series = match route.as_str() {
                "mbar" => ksf_mbar(&g)?,
                "monomial" => ksf_oracle(&g, cap)?,
                "omegap" => ksf_omega_p(&g, cap)?,
                other => anyhow::bail!("unknown route `{}` (mbar, monomial, omegap)", other),
            };
            if cli.json {
                println!("{}", io::kseries_to_json(&series));
            } else {
                println!("Xbar_G = {}", series);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Convert { series, to } => {
            let text = std::fs::read_to_string(&series)
                .map_err(|e| anyhow::anyhow!("cannot read {}: {}", series.display(), e))?;
            let parsed = io::series_from_json(&text)?;
            let target = parse_basis(&to)?;
            let converted = parsed.convert(target)?;
            if cli.json {
                println!("{}", io::series_to_json(&converted));
            } else {
                println!("{}", converted);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Complement { graph } => {
            let g = read_graph(&graph)?;
            println!("{}", io::graph_to_json(&g.complement()));
            Ok(ExitCode::SUCCESS)
        }
        Command::SolveMap { graph, budget } => {
            let g = read_graph(&graph)?;
            let outcome = solve_for_graph(&g, budget)?;
            if cli.json {
                println!("{}", io::solve_outcome_to_json(&outcome));
            } else {
                match &outcome {
                    SolveOutcome::Solutions(sols) => {
                        println!("solutions: {}", sols.len());
                        for sol in sols {
                            let entries: Vec<String> =
                                sol.entries.iter().map(|(n, a)| format!("a{}={}", n, a)).collect();
                            let free: Vec<String> =
                                sol.free.iter().map(|n| format!("a{}", n)).collect();
                            if free.is_empty() {
                                println!("  {}", entries.join(", "));
                            } else {
                                println!("  {} (free: {})", entries.join(", "), free.join(", "));
                            }
                        }
                    }
                    SolveOutcome::Infeasible { witness } => {
                        println!("infeasible: violated at lambda={} ({})", witness.lambda, witness);
                    }
                    SolveOutcome::NoExactRoot { witness } => {
                        println!("no exact root: {}", witness);
                    }
                    SolveOutcome::Undetermined { residual } => {
                        println!("undetermined subsystem:");
                        for eq in residual {
                            println!("  {}", eq);
                        }
                    }
                }
            }
            Ok(verdict(matches!(outcome, SolveOutcome::Solutions(_))))
        }
        Command::VerifyMap { graph, class_config, triangle_free, all_cliques, identity } => {
            let g = read_graph(&graph)?;
            let n = g.total_weight();
            let spec: MorphismSpec = if let Some(path) = class_config {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| anyhow::anyhow!("cannot read {}: {}", path.display(), e))?;
                let cfg = io::class_config_from_json(&text)?;
                spec_from_classes(&cfg, n)?
            } else if triangle_free {
                triangle_free_spec(n)
            } else if all_cliques {
                all_cliques_spec(n)
            } else if identity {
                identity_spec(n)
            } else {
                anyhow::bail!(
                    "choose a map: --class-config FILE, --triangle-free, --all-cliques, or --identity"
                );
            };
            let report = verify_complement_map(&spec, &g)?;
            if cli.json {
                let diff = report.first_diff.as_ref().map(|(l, a, b)| {
                    serde_json::json!({
                        "lambda": l.parts(),
                        "image": io::phase_scalar_to_json(a),
                        "target": io::phase_scalar_to_json(b),
                    })
                });
                println!(
                    "{}",
                    serde_json::json!({
                        "verified": report.holds,
                        "map": io::morphism_spec_to_json(&spec),
                        "first_diff": diff,
                    })
                );
            } else if report.holds {
                println!("verified: map sends X_G to X_complement(G)");
            } else {
                let (l, a, b) = report.first_diff.as_ref().expect("diff present on failure");
                println!(
                    "NOT verified: first difference at lambda={} (image {}, target {})",
                    l, a, b
                );
            }
            Ok(verdict(report.holds))
        }
        Command::VerifyDiagram { graph, v_set, e_set, c_set } => {
            let g = read_graph(&graph)?;
            let v: BTreeSet<u32> = v_set.into_iter().collect();
            let e: BTreeSet<u32> = e_set.into_iter().collect();
            let c: Option<BTreeSet<u32>> = c_set.map(|s| s.into_iter().collect());
            let report = verify_commuting_diagram(&v, &e, c.as_ref(), &g)?;
            if cli.json {
                let diff = report.first_diff.as_ref().map(|(l, a, b)| {
                    serde_json::json!({
                        "lambda": l.parts(),
                        "phi_side": io::phase_scalar_to_json(a),
                        "theta_side": io::phase_scalar_to_json(b),
                    })
                });
                println!("{}", serde_json::json!({"verified": report.holds, "first_diff": diff}));
            } else if report.holds {
                println!("verified: phi(X_G) = theta(X_complement(G))");
            } else {
                let (l, a, b) = report.first_diff.as_ref().expect("diff present on failure");
                println!("NOT verified: first difference at lambda={} ({} vs {})", l, a, b);
            }
            Ok(verdict(report.holds))
        }
        Command::Family { binary_clique, b, allow_overlap, verify } => {
            let blocks = parse_blocks(&b)?;
            let n = binary_clique;
            let member = binary_clique_graph(n, &blocks, allow_overlap)?;
            let mut ok = true;
            let mut lines: Vec<String> = Vec::new();
            let mut family_json = serde_json::json!({
                "member": io::graph_to_json(&member),
                "n": n,
            });
            lines.push(format!("G_{} = {}", n, io::graph_to_json(&member)));
            if verify {
                let family: Vec<WeightedGraph> = (1..=n)
                    .map(|k| binary_clique_graph(k, &blocks, allow_overlap))
                    .collect::<Result<_, _>>()?;
                let closure = family_closure_check(&family)?;
                ok &= closure.closed();
                lines.push(format!(
                    "closure check (n = 1..={}): {}",
                    n,
                    if closure.closed() { "closed" } else { "VIOLATED" }
                ));
                let spec = spec_from_classes(&binary_clique_classes(&blocks, n as u32), n as u32)?;
                let mut verified = Vec::new();
                for (k, g) in family.iter().enumerate() {
                    let report = verify_complement_map(&spec, g)?;
                    ok &= report.holds;
                    verified.push(report.holds);
                    lines.push(format!(
                        "map on G_{}: {}",
                        k + 1,
                        if report.holds { "verified" } else { "NOT verified" }
                    ));
                }
                family_json["closure_closed"] = serde_json::json!(closure.closed());
                family_json["map_verified"] = serde_json::json!(verified);
                family_json["map"] = io::morphism_spec_to_json(&spec);
            }
            if cli.json {
                println!("{}", family_json);
            } else {
                for line in lines {
                    println!("{}", line);
                }
            }
            Ok(verdict(ok))
        }
        Command::HopfCheck { graph, element, algebra } => {
            let algebra = match algebra.as_str() {
                "lambda" => Algebra::Lambda,
                "lambda-tilde" | "lambdatilde" => Algebra::LambdaTilde,
                other => anyhow::bail!("unknown algebra `{}` (lambda, lambda-tilde)", other),
            };
            let f: Series = if let Some(path) = graph {
                let g = read_graph(&path)?;
                match algebra {
                    Algebra::Lambda => csf(&g, Basis::P)?,
                    Algebra::LambdaTilde => {
                        csf(&g, Basis::MTilde)?.into_algebra(Algebra::LambdaTilde)?
                    }
                }
            } else if let Some(spec) = element {
                let (basis, lambda) = parse_element(&spec)?;
                if !algebra.admits(basis) {
                    anyhow::bail!("basis {} unavailable in {}", basis.name(), algebra.name());
                }
                Series::basis_element_in(basis, lambda, algebra)
            } else {
                anyhow::bail!("provide --graph FILE or --element BASIS:PARTS");
            };
            let report = hopf_axiom_check(&f)?;
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "counit_law": report.counit_law,
                        "coassociative": report.coassociative,
                        "cocommutative": report.cocommutative,
                        "antipode_law": report.antipode_law,
                        "verified": report.passed(),
                    })
                );
            } else {
                println!("counit law:      {}", if report.counit_law { "ok" } else { "FAILED" });
                println!("coassociativity: {}", if report.coassociative { "ok" } else { "FAILED" });
                println!("cocommutativity: {}", if report.cocommutative { "ok" } else { "FAILED" });
                println!("antipode law:    {}", if report.antipode_law { "ok" } else { "FAILED" });
            }
            Ok(verdict(report.passed()))
        }
        Command::Antipode { graph, method } => {
            let g = read_graph(&graph)?;
            let (sums, check_agreement) = match method.as_str() {
                "schmitt" => (vec![("schmitt", antipode_schmitt(&g)?)], false),
                "humpert-martin" => {
                    (vec![("humpert-martin", antipode_humpert_martin(&g)?)], false)
                }
                "both" => (
                    vec![
                        ("schmitt", antipode_schmitt(&g)?),
                        ("humpert-martin", antipode_humpert_martin(&g)?),
                    ],
                    true,
                ),
                other => {
                    anyhow::bail!("unknown method `{}` (schmitt, humpert-martin, both)", other)
                }
            };
            let mut ok = true;
            let mut payload = serde_json::Map::new();
            for (name, sum) in &sums {
                let terms: Vec<serde_json::Value> = sum
                    .terms()
                    .map(|(graph, coef)| {
                        serde_json::json!({
                            "coef": cochroma::scalar::format_rational(coef),
                            "graph": io::graph_to_json(graph),
                        })
                    })
                    .collect();
                payload.insert(name.to_string(), serde_json::Value::Array(terms));
                if !cli.json {
                    println!("{} ({} terms):", name, sum.num_terms());
                    for (graph, coef) in sum.terms() {
                        println!("  {} * {:?}", coef, graph);
                    }
                }
            }
            if check_agreement {
                let agree = sums[0].1 == sums[1].1;
                let csf_match = {
                    let via_sum = csf_of_graphsum(&sums[0].1, Basis::P)?;
                    let direct = csf(&g, Basis::P)?.antipode()?;
                    via_sum.compare(&direct).equal
                };
                ok = agree && csf_match;
                payload.insert("formulas_agree".into(), serde_json::json!(agree));
                payload.insert("csf_antipode_matches".into(), serde_json::json!(csf_match));
                if !cli.json {
                    println!("formulas agree:    {}", if agree { "yes" } else { "NO" });
                    println!("S(X_G) reproduced: {}", if csf_match { "yes" } else { "NO" });
                }
            }
            if cli.json {
                println!("{}", serde_json::Value::Object(payload));
            }
            Ok(verdict(ok))
        }
        Command::OracleCheck { graph, cap } => {
            let g = read_graph(&graph)?;
            let mut ok = true;
            let mut lines = Vec::new();
            let routes = routes_agree(&g)?;
            ok &= routes;
            lines.push(("csf routes (stable partitions vs orientations)", routes));
            let oracle = {
                let via_routes = csf(&g, Basis::M)?;
                let via_oracle = csf_oracle(&g)?;
                via_routes.compare(&via_oracle).equal
            };
            ok &= oracle;
            lines.push(("csf vs coloring oracle", oracle));
            if let Some(cap) = cap {
                let via_mbar = mbar_to_monomial(&ksf_mbar(&g)?, cap)?;
                let via_oracle = ksf_oracle(&g, cap)?;
                let k_ok = via_mbar.compare(&via_oracle).equal;
                ok &= k_ok;
                lines.push(("ksf cover route vs set-coloring oracle", k_ok));
            }
            if cli.json {
                let obj: serde_json::Map<String, serde_json::Value> = lines
                    .iter()
                    .map(|(name, v)| (name.replace(' ', "_"), serde_json::json!(v)))
                    .collect();
                println!(
                    "{}",
                    serde_json::json!({"verified": ok, "checks": serde_json::Value::Object(obj)})
                );
            } else {
                for (name, v) in &lines {
                    println!("{}: {}", name, if *v { "ok" } else { "MISMATCH" });
                }
            }
            Ok(verdict(ok))
        }
    }
}
