use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use gamma_graphic::delta_matroid::{self, enumerate_gamma_graphic_with_cap, format_set, DeltaError, SetSystem};
use gamma_graphic::gf_repr::{build_representation, minor_family, nonzero_gadget, GaloisField, GfError};
use gamma_graphic::greedy::{solve_max_weight, WeightError, WeightMap};
use gamma_graphic::labelled_graph::{EdgeId, EdgeSet, GraphDocument, GraphError, LabelledGraph, Multigraph, VertexId};
use gamma_graphic::packing::{pack_s_trees, pack_trees_mod_k, Packing, PackingError};
use gamma_graphic::separation::{extend_to_feasible, is_separable, SeparationError};

#[derive(Parser)]
#[command(name = "gamma-graphic", version, about = "Acyclic gamma-nonzero edge sets of group-labelled graphs")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find a maximum-weight acyclic gamma-nonzero edge set.
    Solve {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        weights: PathBuf,
        /// Also print the decision taken for every edge.
        #[arg(long)]
        trace: bool,
    },
    /// Decide whether a feasible set contains --in and avoids --out.
    Separate {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long = "in", value_delimiter = ',')]
        include: Vec<String>,
        #[arg(long = "out", value_delimiter = ',')]
        exclude: Vec<String>,
        /// Print one such feasible set when it exists.
        #[arg(long)]
        witness: bool,
    },
    /// Pack vertex-disjoint trees whose orders are not divisible by k.
    PackModK {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        weights: PathBuf,
    },
    /// Partition the vertices into trees that each meet S.
    PackStree {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        s: Vec<String>,
        #[arg(long)]
        weights: PathBuf,
    },
    /// List every acyclic gamma-nonzero edge set.
    Enumerate {
        #[arg(long)]
        graph: PathBuf,
        /// Refuse graphs with more edges than this.
        #[arg(long, default_value_t = delta_matroid::DEFAULT_ENUMERATION_CAP)]
        cap: usize,
    },
    /// Verify the symmetric exchange axiom on the feasible family.
    CheckAxioms {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = delta_matroid::DEFAULT_ENUMERATION_CAP)]
        cap: usize,
    },
    /// Build the symmetric matrix representation over GF(p^ell).
    Represent {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        ell: u32,
        /// Compare every principal minor against the enumerated family.
        #[arg(long)]
        check: bool,
        /// Replace zero labels by pendant leaves before building.
        #[arg(long)]
        gadget: bool,
    },
}

/// Exit status 2 for unreadable or malformed input, 1 when the input is
/// well formed but the requested object does not exist.
enum CliError {
    Malformed(String),
    Undefined(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Malformed(_) => 2,
            CliError::Undefined(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Malformed(m) | CliError::Undefined(m) => f.write_str(m),
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Malformed(e.to_string())
    }
}

impl From<WeightError> for CliError {
    fn from(e: WeightError) -> Self {
        CliError::Malformed(format!("weights: {e}"))
    }
}

impl From<DeltaError> for CliError {
    fn from(e: DeltaError) -> Self {
        match e {
            DeltaError::Graph(g) => g.into(),
            other => CliError::Undefined(other.to_string()),
        }
    }
}

impl From<SeparationError> for CliError {
    fn from(e: SeparationError) -> Self {
        match e {
            SeparationError::NotSeparable => CliError::Undefined(e.to_string()),
            other => CliError::Malformed(other.to_string()),
        }
    }
}

impl From<PackingError> for CliError {
    fn from(e: PackingError) -> Self {
        match e {
            PackingError::ComponentMissesTerminals(_) => CliError::Undefined(e.to_string()),
            PackingError::Weights(w) => w.into(),
            other => CliError::Malformed(other.to_string()),
        }
    }
}

impl From<GfError> for CliError {
    fn from(e: GfError) -> Self {
        match e {
            GfError::NotPrime(_) | GfError::BadDegree(_) | GfError::Graph(_) => CliError::Malformed(e.to_string()),
            other => CliError::Undefined(other.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))
}

fn document(path: &Path) -> Result<GraphDocument, CliError> {
    GraphDocument::from_json_str(&read(path)?).map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))
}

fn labelled(path: &Path) -> Result<LabelledGraph, CliError> {
    document(path)?
        .into_labelled()
        .map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))
}

fn multigraph(path: &Path) -> Result<Multigraph, CliError> {
    document(path)?
        .into_multigraph()
        .map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))
}

fn weights(path: &Path) -> Result<WeightMap, CliError> {
    WeightMap::from_json_str(&read(path)?).map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))
}

fn ids(set: &EdgeSet) -> Vec<&str> {
    set.iter().map(EdgeId::as_str).collect()
}

fn vertex_ids(set: &BTreeSet<VertexId>) -> Vec<&str> {
    set.iter().map(VertexId::as_str).collect()
}

fn edge_list(raw: &[String]) -> EdgeSet {
    raw.iter().filter(|s| !s.is_empty()).map(|s| EdgeId::from(s.as_str())).collect()
}

/// Feasible sets ordered by size, then lexicographically.
fn sorted_family(m: &SetSystem) -> Vec<EdgeSet> {
    let mut family = m.feasible_sets();
    family.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    family
}

fn solve(graph: &Path, weight_file: &Path, trace: bool, as_json: bool) -> Result<(), CliError> {
    let g = labelled(graph)?;
    let w = weights(weight_file)?;
    let s = solve_max_weight(&g, &w)?;
    if as_json {
        let mut out = json!({"edges": ids(&s.edges), "total": s.total.to_string()});
        if trace {
            out["trace"] = s
                .trace
                .decisions
                .iter()
                .map(|d| json!({"edge": d.edge.as_str(), "branch": d.branch.as_str()}))
                .collect();
        }
        println!("{out}");
    } else {
        println!("edges: {}", format_set(&s.edges));
        println!("total: {}", s.total);
        if trace {
            println!("trace:");
            for d in &s.trace.decisions {
                println!("  {} {}", d.edge, d.branch);
            }
        }
    }
    Ok(())
}

fn separate(graph: &Path, include: &[String], exclude: &[String], witness: bool, as_json: bool) -> Result<(), CliError> {
    let g = labelled(graph)?;
    let x = edge_list(include);
    let y = edge_list(exclude);
    let separable = is_separable(&g, &x, &y)?;
    let found = if separable && witness {
        Some(extend_to_feasible(&g, &x, &y)?)
    } else {
        None
    };
    if as_json {
        let mut out = json!({"separable": separable});
        if let Some(f) = &found {
            out["witness"] = json!(ids(f));
        }
        println!("{out}");
    } else {
        println!("separable: {separable}");
        if let Some(f) = &found {
            println!("witness: {}", format_set(f));
        }
    }
    Ok(())
}

fn print_packing(p: &Packing, as_json: bool) {
    if as_json {
        let trees: Vec<Value> = p
            .trees
            .iter()
            .map(|t| json!({"vertices": vertex_ids(&t.vertices), "edges": ids(&t.edges)}))
            .collect();
        println!("{}", json!({"trees": trees, "total": p.total.to_string()}));
    } else {
        println!("trees: {}", p.trees.len());
        for t in &p.trees {
            println!("  vertices: {{{}}} edges: {}", vertex_ids(&t.vertices).join(","), format_set(&t.edges));
        }
        println!("total: {}", p.total);
    }
}

fn enumerate(graph: &Path, cap: usize, as_json: bool) -> Result<(), CliError> {
    let g = labelled(graph)?;
    let m = enumerate_gamma_graphic_with_cap(&g, cap)?;
    let family = sorted_family(&m);
    let ground: Vec<&str> = m.ground().iter().map(EdgeId::as_str).collect();
    if as_json {
        let sets: Vec<Vec<&str>> = family.iter().map(ids).collect();
        println!("{}", json!({"ground": ground, "count": family.len(), "feasible": sets}));
    } else {
        println!("ground: {{{}}}", ground.join(","));
        println!("feasible sets: {}", family.len());
        for f in &family {
            println!("{}", format_set(f));
        }
    }
    Ok(())
}

fn check_axioms(graph: &Path, cap: usize, as_json: bool) -> Result<(), CliError> {
    let g = labelled(graph)?;
    let m = enumerate_gamma_graphic_with_cap(&g, cap)?;
    let verdict = m.check_exchange_axiom();
    if as_json {
        let mut out = json!({"delta_matroid": verdict.is_ok(), "feasible_sets": m.len()});
        if let Err(v) = &verdict {
            out["violation"] = json!({"x": ids(&v.x), "y": ids(&v.y), "e": v.e.as_str()});
        }
        println!("{out}");
    } else {
        match &verdict {
            Ok(()) => println!("delta-matroid: yes"),
            Err(v) => {
                println!("delta-matroid: no");
                println!("violation: {v}");
            }
        }
    }
    match verdict {
        Ok(()) => Ok(()),
        Err(_) => Err(CliError::Undefined("the exchange axiom fails".into())),
    }
}

fn represent(graph: &Path, p: u64, ell: u32, check: bool, gadget: bool, as_json: bool) -> Result<(), CliError> {
    let mut g = labelled(graph)?;
    let mut contracted = EdgeSet::new();
    if gadget {
        (g, contracted) = nonzero_gadget(&g)?;
    }
    let field = GaloisField::new(p, ell)?;
    let a = build_representation(&g, field, None)?;
    let verdict = if check {
        let family = enumerate_gamma_graphic_with_cap(&g, delta_matroid::DEFAULT_ENUMERATION_CAP)?;
        let minors = minor_family(&a)?;
        let mismatches: Vec<&EdgeSet> = minors
            .iter()
            .filter(|(f, ok)| **ok != family.contains(f))
            .map(|(f, _)| f)
            .collect();
        Some((minors.len(), mismatches.into_iter().cloned().collect::<Vec<_>>()))
    } else {
        None
    };
    if as_json {
        let mut out = json!({
            "modulus": field.modulus(),
            "matrix": a.to_json(),
        });
        if gadget {
            out["pendant_edges"] = json!(ids(&contracted));
        }
        if let Some((subsets, bad)) = &verdict {
            out["check"] = json!({
                "subsets": subsets,
                "mismatches": bad.iter().map(ids).collect::<Vec<_>>(),
                "equivalent": bad.is_empty(),
            });
        }
        println!("{out}");
    } else {
        let modulus: Vec<String> = field.modulus().iter().map(u32::to_string).collect();
        println!("field: {field} (modulus coefficients, constant first: [{}])", modulus.join(","));
        if gadget {
            println!("pendant edges: {}", format_set(&contracted));
        }
        print!("{a}");
        if let Some((subsets, bad)) = &verdict {
            println!("checked {subsets} subsets, {} mismatches", bad.len());
            println!("equivalent: {}", if bad.is_empty() { "yes" } else { "no" });
        }
    }
    match verdict {
        Some((_, bad)) if !bad.is_empty() => Err(CliError::Undefined("minors disagree with the feasible family".into())),
        _ => Ok(()),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let as_json = cli.json;
    match cli.command {
        Command::Solve { graph, weights, trace } => solve(&graph, &weights, trace, as_json),
        Command::Separate {
            graph,
            include,
            exclude,
            witness,
        } => separate(&graph, &include, &exclude, witness, as_json),
        Command::PackModK { graph, k, weights: w } => {
            let g = multigraph(&graph)?;
            let p = pack_trees_mod_k(&g, k, &weights(&w)?)?;
            print_packing(&p, as_json);
            Ok(())
        }
        Command::PackStree { graph, s, weights: w } => {
            let g = multigraph(&graph)?;
            let terminals: BTreeSet<VertexId> = s.iter().filter(|v| !v.is_empty()).map(|v| VertexId::from(v.as_str())).collect();
            let p = pack_s_trees(&g, &terminals, &weights(&w)?)?;
            print_packing(&p, as_json);
            Ok(())
        }
        Command::Enumerate { graph, cap } => enumerate(&graph, cap, as_json),
        Command::CheckAxioms { graph, cap } => check_axioms(&graph, cap, as_json),
        Command::Represent {
            graph,
            p,
            ell,
            check,
            gadget,
        } => represent(&graph, p, ell, check, gadget, as_json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
