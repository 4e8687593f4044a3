//! Command-line front end.
//!
//! Every subcommand loads a group file, runs one computation and renders it
//! as a table, a structured JSON report (schema [`REPORT_SCHEMA`]) or DOT.
//! Exit status is 0 on success, 1 on input errors and 2 when a computed
//! certificate or audit fails.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cayley::{build_graph, min_degree_search, CayleyAbelsSpec, FactorClassification, Model};
use crate::chief::{self, ChiefBlock, NormalFactor, NormalSeries};
use crate::error::{Error, Result};
use crate::finiteness::{directed_degree_witness, essential_finiteness, filtering_degree_witness};
use crate::group::{FiniteGroup, Subgroup};
use crate::groupfile::GroupFile;
use crate::lattice::{FamilyKind, NormalLattice};

pub const REPORT_SCHEMA: &str = "chiefseries.report/v1";

const PROXY_NOTE: &str = "elliptic: K acts trivially on the quotient graph by L; \
free: K meets LU inside L; both tags and block negligibility are relative to the spec (U, S)";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    #[value(alias = "json")]
    Structured,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Filtering,
    Directed,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "chiefseries",
    version,
    about = "Normal lattices, Cayley-Abels coset graphs and essentially chief series of finite permutation groups"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    /// Largest group order to enumerate (default 20000 or the file's `order_bound`).
    #[arg(long, global = true)]
    pub order_bound: Option<usize>,
}

/// `U` and `S` of a coset graph; defaults come from the file's `cayley_abels` table.
#[derive(Debug, Clone, Args)]
pub struct GraphArgs {
    /// Name of the subgroup `U`.
    #[arg(long = "U", value_name = "NAME")]
    pub u: Option<String>,
    /// Elements of `S`, by name or in cycle notation; inverses are added.
    #[arg(long = "S", value_name = "ELEMENT", num_args = 1..)]
    pub s: Vec<String>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// List the normal subgroups and the Hasse diagram.
    Lattice { file: PathBuf },
    /// Build the coset graph of (G, U, S) and its quotient degrees.
    CayleyAbels {
        file: PathBuf,
        #[command(flatten)]
        graph: GraphArgs,
        /// Emit the graph in DOT (same as `--format dot`).
        #[arg(long)]
        dot: bool,
        /// Search for an `S` of smallest degree for the given `U`.
        #[arg(long)]
        min_degree: bool,
        /// Candidate budget of the search.
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
    },
    /// Degree witness and elliptic-by-free sandwich of a family of normal subgroups.
    Sandwich {
        file: PathBuf,
        #[command(flatten)]
        graph: GraphArgs,
        /// Family members, by subgroup name or lattice index.
        #[arg(long, required = true, num_args = 1.., value_delimiter = ',')]
        family: Vec<String>,
        #[arg(long, value_enum)]
        kind: KindArg,
    },
    /// Essentially chief series through the anchors, with its audits.
    Series {
        file: PathBuf,
        #[command(flatten)]
        graph: GraphArgs,
        /// Ascending normal subgroups the series must pass through.
        #[arg(long, num_args = 0.., value_delimiter = ',')]
        anchors: Vec<String>,
    },
    /// Match the non-negligible chief factors of two essentially chief series.
    JhCompare {
        file: PathBuf,
        #[command(flatten)]
        graph: GraphArgs,
        /// Terms of the first series; `1` and `G` are added when missing.
        #[arg(long, required = true, num_args = 1.., value_delimiter = ',')]
        series_a: Vec<String>,
        #[arg(long, required = true, num_args = 1.., value_delimiter = ',')]
        series_b: Vec<String>,
    },
    /// Chief blocks, their negligibility and minimal covering subgroups.
    Blocks {
        file: PathBuf,
        #[command(flatten)]
        graph: GraphArgs,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Serialize)]
struct Report {
    schema: &'static str,
    command: &'static str,
    group: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    spec: Option<Value>,
    result: Value,
}

struct Rendered {
    report: Report,
    table: String,
    dot: Option<String>,
}

/// Runs a parsed configuration.
pub fn run(config: &RunConfig) -> Outcome {
    match execute(config) {
        Ok(r) => {
            let stdout = match config.format {
                Format::Table => r.table,
                Format::Structured => {
                    let mut s = serde_json::to_string_pretty(&r.report).expect("report serializes");
                    s.push('\n');
                    s
                }
                Format::Dot => match r.dot {
                    Some(d) => d,
                    None => {
                        return Outcome {
                            exit_code: 1,
                            stdout: String::new(),
                            stderr: format!("error: no DOT output for `{}`\n", r.report.command),
                        }
                    }
                },
            };
            Outcome {
                exit_code: 0,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            exit_code: if e.is_verification_failure() { 2 } else { 1 },
            stdout: String::new(),
            stderr: if e.is_verification_failure() {
                format!("verification failed: {e}\n")
            } else {
                format!("error: {e}\n")
            },
        },
    }
}

/// Parses `args` (including the program name) and runs them.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => run(&config),
        Err(e) => {
            let text = e.render().to_string();
            match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome {
                        exit_code: 0,
                        stdout: text,
                        stderr: String::new(),
                    }
                }
                _ => Outcome {
                    exit_code: 1,
                    stdout: String::new(),
                    stderr: text,
                },
            }
        }
    }
}

struct Session {
    file: GroupFile,
    group: Arc<FiniteGroup>,
}

impl Session {
    fn open(path: &PathBuf, bound: Option<usize>) -> Result<Self> {
        let file = GroupFile::load(path)?;
        let group = file.build_group(bound)?;
        Ok(Session { file, group })
    }

    fn describe_group(&self) -> Value {
        json!({
            "point_degree": self.group.degree(),
            "order": self.group.order(),
            "generators": self.group.generators().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        })
    }

    fn spec(&self, args: &GraphArgs) -> Result<(String, CayleyAbelsSpec)> {
        let u_name = args
            .u
            .clone()
            .or_else(|| self.file.default_u.clone())
            .ok_or_else(|| Error::Input("no --U given and the file has no default".into()))?;
        let s_names = if args.s.is_empty() {
            self.file.default_s.clone()
        } else {
            args.s.clone()
        };
        let u = self.file.subgroup(&self.group, &u_name)?;
        let s = s_names
            .iter()
            .map(|t| self.file.element(&self.group, t))
            .collect::<Result<Vec<_>>>()?;
        Ok((
            u_name,
            CayleyAbelsSpec::new(Arc::clone(&self.group), u, &s)?,
        ))
    }

    fn model(&self, args: &GraphArgs) -> Result<(String, Model)> {
        let (name, spec) = self.spec(args)?;
        Ok((name, Model::from_spec(spec)?))
    }

    /// Names from the file for each lattice member.
    fn member_names(&self, lattice: &NormalLattice) -> Vec<Vec<String>> {
        let mut names = vec![Vec::new(); lattice.len()];
        for name in self.file.subgroups.keys() {
            if let Ok(h) = self.file.subgroup(&self.group, name) {
                if let Some(i) = lattice.index_of(&h) {
                    names[i].push(name.clone());
                }
            }
        }
        for (i, n) in [(lattice.bottom(), "1"), (lattice.top(), "G")] {
            if names[i].is_empty() {
                names[i].push(n.to_string());
            }
        }
        names
    }

    fn resolve(&self, lattice: &NormalLattice, token: &str) -> Result<usize> {
        let token = token.trim();
        if self.file.subgroups.contains_key(token) || token == "1" || token == "G" {
            let h = self.file.subgroup(&self.group, token)?;
            return lattice
                .index_of(&h)
                .ok_or_else(|| Error::Input(format!("subgroup {token:?} is not normal")));
        }
        match token.parse::<usize>() {
            Ok(i) if i < lattice.len() => Ok(i),
            Ok(i) => Err(Error::Input(format!(
                "lattice index {i} out of range 0..{}",
                lattice.len()
            ))),
            Err(_) => Err(Error::Input(format!("unknown subgroup {token:?}"))),
        }
    }

    fn resolve_all(&self, lattice: &NormalLattice, tokens: &[String]) -> Result<Vec<usize>> {
        tokens
            .iter()
            .filter(|t| !t.trim().is_empty())
            .map(|t| self.resolve(lattice, t))
            .collect()
    }
}

fn gens_of(group: &FiniteGroup, h: &Subgroup) -> Vec<String> {
    h.generators()
        .iter()
        .map(|&g| group.element(g).to_string())
        .collect()
}

fn member_json(lattice: &NormalLattice, names: &[Vec<String>], i: usize) -> Value {
    json!({
        "index": i,
        "order": lattice.order(i),
        "names": names[i],
        "generators": gens_of(lattice.group(), lattice.member(i)),
    })
}

fn label(names: &[Vec<String>], i: usize) -> String {
    match names[i].first() {
        Some(n) => format!("{i}:{n}"),
        None => format!("{i}"),
    }
}

fn spec_json(name: &str, m: &Model) -> Value {
    let g = m.group();
    let graph = m.cayley().graph();
    json!({
        "U": name,
        "U_order": m.cayley().spec().u().order(),
        "S": m.cayley().spec().s().iter().map(|&s| g.element(s).to_string()).collect::<Vec<_>>(),
        "vertices": graph.vertex_count(),
        "edges": graph.edge_count(),
        "degree": m.degree(),
        "proxies": PROXY_NOTE,
    })
}

fn tag_string(c: &FactorClassification) -> String {
    let tags: Vec<String> = c
        .tags()
        .iter()
        .map(|t| {
            serde_json::to_value(t)
                .expect("tag")
                .as_str()
                .expect("string")
                .to_string()
        })
        .collect();
    if tags.is_empty() {
        "-".into()
    } else {
        tags.join(",")
    }
}

fn classification_json(c: &FactorClassification) -> Value {
    json!({
        "lower": c.lower,
        "upper": c.upper,
        "tags": c.tags(),
        "moving_element": c.moving_element,
        "stabilizing_element": c.stabilizing_element,
        "intermediate": c.intermediate,
    })
}

fn execute(config: &RunConfig) -> Result<Rendered> {
    match &config.command {
        Command::Lattice { file } => lattice_cmd(&Session::open(file, config.order_bound)?),
        Command::CayleyAbels {
            file,
            graph,
            dot,
            min_degree,
            budget,
        } => {
            let s = Session::open(file, config.order_bound)?;
            let mut r = cayley_cmd(&s, graph, *min_degree, *budget)?;
            if *dot && config.format == Format::Table {
                r.table = r.dot.clone().unwrap_or_default();
            }
            Ok(r)
        }
        Command::Sandwich {
            file,
            graph,
            family,
            kind,
        } => sandwich_cmd(
            &Session::open(file, config.order_bound)?,
            graph,
            family,
            *kind,
        ),
        Command::Series {
            file,
            graph,
            anchors,
        } => series_cmd(&Session::open(file, config.order_bound)?, graph, anchors),
        Command::JhCompare {
            file,
            graph,
            series_a,
            series_b,
        } => jh_cmd(
            &Session::open(file, config.order_bound)?,
            graph,
            series_a,
            series_b,
        ),
        Command::Blocks { file, graph } => {
            blocks_cmd(&Session::open(file, config.order_bound)?, graph)
        }
    }
}

fn lattice_cmd(s: &Session) -> Result<Rendered> {
    let lattice = NormalLattice::enumerate(Arc::clone(&s.group))?;
    let names = s.member_names(&lattice);
    let edges = lattice.hasse_edges();
    let mut table = format!(
        "group of order {} on {} points: {} normal subgroups\n\n{:>5} {:>7}  {:<12} generators\n",
        s.group.order(),
        s.group.degree(),
        lattice.len(),
        "index",
        "order",
        "names"
    );
    for i in 0..lattice.len() {
        let gens = gens_of(&s.group, lattice.member(i));
        let _ = writeln!(
            table,
            "{i:>5} {:>7}  {:<12} {}",
            lattice.order(i),
            names[i].join(","),
            if gens.is_empty() {
                "()".to_string()
            } else {
                gens.join(" ")
            }
        );
    }
    table.push_str("\nHasse diagram (lower -> upper)\n");
    for (a, b) in &edges {
        let _ = writeln!(table, "  {} -> {}", label(&names, *a), label(&names, *b));
    }
    let mut dot = String::from("digraph lattice {\n  rankdir=BT;\n");
    for i in 0..lattice.len() {
        let _ = writeln!(
            dot,
            "  n{i} [label=\"{} |{}|\"];",
            names[i].first().cloned().unwrap_or_else(|| format!("N{i}")),
            lattice.order(i)
        );
    }
    for (a, b) in &edges {
        let _ = writeln!(dot, "  n{a} -> n{b};");
    }
    dot.push_str("}\n");
    let result = json!({
        "members": (0..lattice.len()).map(|i| member_json(&lattice, &names, i)).collect::<Vec<_>>(),
        "hasse_edges": edges,
    });
    Ok(Rendered {
        report: Report {
            schema: REPORT_SCHEMA,
            command: "lattice",
            group: s.describe_group(),
            spec: None,
            result,
        },
        table,
        dot: Some(dot),
    })
}

fn cayley_cmd(s: &Session, args: &GraphArgs, min_degree: bool, budget: usize) -> Result<Rendered> {
    let (u_name, spec) = s.spec(args)?;
    if min_degree {
        let u = spec.u().clone();
        let (degree, chosen, examined, truncated) = match min_degree_search(&s.group, &u, budget) {
            Ok(r) => {
                let chosen: Vec<String> = r
                    .spec
                    .s()
                    .iter()
                    .map(|&x| s.group.element(x).to_string())
                    .collect();
                (r.degree, Some(chosen), r.candidates_examined, false)
            }
            Err(Error::BudgetExceeded { best: Some(d), .. }) => (d, None, budget, true),
            Err(e) => return Err(e),
        };
        let table = format!(
            "U = {u_name} (order {})\nsmallest degree found: {degree}{}\ncandidates examined: {examined}\nS = {}\n",
            u.order(),
            if truncated { " (upper bound, budget exhausted)" } else { "" },
            chosen.as_ref().map(|c| c.join(" ")).unwrap_or_else(|| "?".into())
        );
        return Ok(Rendered {
            report: Report {
                schema: REPORT_SCHEMA,
                command: "cayley-abels",
                group: s.describe_group(),
                spec: None,
                result: json!({
                    "min_degree": {
                        "U": u_name,
                        "degree": degree,
                        "upper_bound_only": truncated,
                        "S": chosen,
                        "candidates_examined": examined,
                    }
                }),
            },
            table,
            dot: None,
        });
    }

    let graph = Arc::new(build_graph(spec)?);
    let lattice = Arc::new(NormalLattice::enumerate(Arc::clone(&s.group))?);
    let m = Model::new(Arc::clone(&lattice), graph)?;
    let names = s.member_names(&lattice);
    let action = m.action();
    let stab_is_u = &action.vertex_stabilizer(0) == m.cayley().spec().u();
    let kernel = action.kernel();
    let mut rows = Vec::new();
    let mut table = String::new();
    let sj = spec_json(&u_name, &m);
    let _ = writeln!(
        table,
        "U = {u_name} (order {}), S = {}\nvertices {}  edges {}  degree {}\nconnected {}  vertex-transitive {}  Stab(U) = U {}  kernel order {}\n",
        m.cayley().spec().u().order(),
        sj["S"].as_array().expect("array").iter().map(|v| v.as_str().unwrap_or("")).collect::<Vec<_>>().join(" "),
        m.cayley().graph().vertex_count(),
        m.cayley().graph().edge_count(),
        m.degree(),
        m.cayley().graph().is_connected(),
        action.is_vertex_transitive(),
        stab_is_u,
        kernel.order(),
    );
    let _ = writeln!(
        table,
        "{:>5} {:>7}  {:<12} {:>9} {:>9}",
        "index", "order", "names", "deg(Γ/N)", "free-mod-kernel"
    );
    for i in 0..lattice.len() {
        let freely = action.acts_freely_modulo_kernel(lattice.member(i));
        let _ = writeln!(
            table,
            "{i:>5} {:>7}  {:<12} {:>9} {:>9}",
            lattice.order(i),
            names[i].join(","),
            m.quotient_degree(i),
            freely
        );
        rows.push(json!({
            "member": i,
            "quotient_degree": m.quotient_degree(i),
            "quotient_vertices": m.quotient_graph(i).vertex_count(),
            "quotient_edges": m.quotient_graph(i).edge_count(),
            "acts_freely_modulo_kernel": freely,
        }));
    }
    let labels: Vec<String> = m
        .cayley()
        .coset_representatives()
        .iter()
        .map(|&r| format!("{}U", s.group.element(r)))
        .collect();
    let dot = m.cayley().graph().to_dot(Some(&labels));
    Ok(Rendered {
        report: Report {
            schema: REPORT_SCHEMA,
            command: "cayley-abels",
            group: s.describe_group(),
            spec: Some(sj),
            result: json!({
                "connected": m.cayley().graph().is_connected(),
                "vertex_transitive": action.is_vertex_transitive(),
                "stabilizer_is_U": stab_is_u,
                "kernel_order": kernel.order(),
                "quotients": rows,
            }),
        },
        table,
        dot: Some(dot),
    })
}

fn sandwich_cmd(
    s: &Session,
    args: &GraphArgs,
    family: &[String],
    kind: KindArg,
) -> Result<Rendered> {
    let (u_name, m) = s.model(args)?;
    let lattice = m.lattice();
    let names = s.member_names(lattice);
    let members = s.resolve_all(lattice, family)?;
    let kind = match kind {
        KindArg::Filtering => FamilyKind::Filtering,
        KindArg::Directed => FamilyKind::Directed,
    };
    let fam = lattice.family(&members, kind)?;
    let witness = match kind {
        FamilyKind::Filtering => filtering_degree_witness(&m, &fam)?,
        _ => directed_degree_witness(&m, &fam)?,
    };
    let cert = essential_finiteness(&m, &fam)?;
    let table = format!(
        "{kind:?} family {{{}}}\ndegree witness: {} (deg {})\nsandwich: {} <= {} <= {}\n  lower factor tags: {}\n  upper factor tags: {}\n",
        fam.members().iter().map(|&i| label(&names, i)).collect::<Vec<_>>().join(", "),
        label(&names, witness),
        m.quotient_degree(witness),
        label(&names, cert.bottom),
        label(&names, cert.middle),
        label(&names, cert.top),
        tag_string(&cert.lower_factor),
        tag_string(&cert.upper_factor),
    );
    Ok(Rendered {
        report: Report {
            schema: REPORT_SCHEMA,
            command: "sandwich",
            group: s.describe_group(),
            spec: Some(spec_json(&u_name, &m)),
            result: json!({
                "family": fam.members(),
                "kind": fam.kind(),
                "degree_witness": witness,
                "certificate": {
                    "chosen": cert.chosen,
                    "bottom": member_json(lattice, &names, cert.bottom),
                    "middle": member_json(lattice, &names, cert.middle),
                    "top": member_json(lattice, &names, cert.top),
                    "lower_factor": classification_json(&cert.lower_factor),
                    "upper_factor": classification_json(&cert.upper_factor),
                },
            }),
        },
        table,
        dot: None,
    })
}

/// For each non-negligible block, the positions of factors that belong to it.
fn block_positions(series: &NormalSeries, blocks: &[ChiefBlock]) -> Vec<Vec<usize>> {
    blocks
        .iter()
        .filter(|b| !b.negligible)
        .map(|b| {
            (0..series.length())
                .filter(|&i| b.contains(series.factor(i)))
                .collect()
        })
        .collect()
}

fn series_table(series: &NormalSeries, names: &[Vec<String>]) -> String {
    let mut t = format!("{:>3}  {:<24} tags\n", "#", "factor");
    for (i, c) in series.classifications.iter().enumerate() {
        let _ = writeln!(
            t,
            "{i:>3}  {:<24} {}",
            format!("{} / {}", label(names, c.upper), label(names, c.lower)),
            tag_string(c)
        );
    }
    t
}

fn series_cmd(s: &Session, args: &GraphArgs, anchors: &[String]) -> Result<Rendered> {
    let (u_name, m) = s.model(args)?;
    let lattice = m.lattice();
    let names = s.member_names(lattice);
    let anchors = s.resolve_all(lattice, anchors)?;
    let series = chief::essentially_chief_series(&m, &anchors)?;
    let bound = chief::series_length_bound(anchors.len(), m.degree());
    if series.length() > bound {
        return Err(Error::VerificationFailed(format!(
            "series has {} factors, above the bound {bound}",
            series.length()
        )));
    }
    if series.rigid_factor_count() > m.degree() {
        return Err(Error::VerificationFailed(format!(
            "{} factors are neither elliptic nor free, above deg(Γ) = {}",
            series.rigid_factor_count(),
            m.degree()
        )));
    }
    let blocks = chief::blocks(&m)?;
    let positions = block_positions(&series, &blocks);
    if let Some(p) = positions.iter().find(|p| p.len() != 1) {
        return Err(Error::VerificationFailed(format!(
            "a non-negligible block occurs at positions {p:?} instead of exactly once"
        )));
    }
    let mut table = format!(
        "essentially chief series through anchors {:?}\n",
        anchors
            .iter()
            .map(|&a| label(&names, a))
            .collect::<Vec<_>>()
    );
    table.push_str(&series_table(&series, &names));
    let _ = writeln!(
        table,
        "\nfactors {} (bound {bound}); neither elliptic nor free {} (bound {})",
        series.length(),
        series.rigid_factor_count(),
        m.degree()
    );
    Ok(Rendered {
        report: Report {
            schema: REPORT_SCHEMA,
            command: "series",
            group: s.describe_group(),
            spec: Some(spec_json(&u_name, &m)),
            result: json!({
                "anchors": anchors,
                "terms": series.terms.iter().map(|&t| member_json(lattice, &names, t)).collect::<Vec<_>>(),
                "factors": series.classifications.iter().map(classification_json).collect::<Vec<_>>(),
                "length": series.length(),
                "length_bound": bound,
                "rigid_factors": series.rigid_factor_count(),
                "non_negligible_block_positions": positions,
            }),
        },
        table,
        dot: None,
    })
}

fn series_from_tokens(s: &Session, m: &Model, tokens: &[String]) -> Result<NormalSeries> {
    let lattice = m.lattice();
    let mut terms = s.resolve_all(lattice, tokens)?;
    if terms.first() != Some(&lattice.bottom()) {
        terms.insert(0, lattice.bottom());
    }
    if terms.last() != Some(&lattice.top()) {
        terms.push(lattice.top());
    }
    NormalSeries::new(m, terms)
}

fn jh_cmd(s: &Session, args: &GraphArgs, a: &[String], b: &[String]) -> Result<Rendered> {
    let (u_name, m) = s.model(args)?;
    let lattice = m.lattice();
    let names = s.member_names(lattice);
    let sa = series_from_tokens(s, &m, a)?;
    let sb = series_from_tokens(s, &m, b)?;
    let blocks = chief::blocks(&m)?;
    let map = chief::jordan_holder_match(&m, &sa, &sb, &blocks)?;
    let back = chief::jordan_holder_match(&m, &sb, &sa, &blocks)?;
    if map.len() != back.len() || map.iter().any(|(i, j)| back.get(j) != Some(i)) {
        return Err(Error::VerificationFailed(
            "the reverse comparison is not the inverse bijection".into(),
        ));
    }
    let fac = |series: &NormalSeries, i: usize| {
        let f = series.factor(i);
        format!("{} / {}", label(&names, f.upper), label(&names, f.lower))
    };
    let mut table = String::from("series A\n");
    table.push_str(&series_table(&sa, &names));
    table.push_str("series B\n");
    table.push_str(&series_table(&sb, &names));
    let _ = writeln!(
        table,
        "\nbijection of non-negligible chief factors ({})",
        map.len()
    );
    for (i, j) in &map {
        let _ = writeln!(
            table,
            "  A[{i}] {}  ->  B[{j}] {}",
            fac(&sa, *i),
            fac(&sb, *j)
        );
    }
    let pairs: Vec<Value> = map
        .iter()
        .map(|(i, j)| json!({"a": i, "b": j, "a_factor": sa.factor(*i), "b_factor": sb.factor(*j)}))
        .collect();
    Ok(Rendered {
        report: Report {
            schema: REPORT_SCHEMA,
            command: "jh-compare",
            group: s.describe_group(),
            spec: Some(spec_json(&u_name, &m)),
            result: json!({
                "series_a": sa.terms,
                "series_b": sb.terms,
                "factors_a": sa.classifications.iter().map(classification_json).collect::<Vec<_>>(),
                "factors_b": sb.classifications.iter().map(classification_json).collect::<Vec<_>>(),
                "bijection": pairs,
                "size": map.len(),
            }),
        },
        table,
        dot: None,
    })
}

fn blocks_cmd(s: &Session, args: &GraphArgs) -> Result<Rendered> {
    let (u_name, m) = s.model(args)?;
    let lattice = m.lattice();
    let names = s.member_names(lattice);
    let blocks = chief::blocks(&m)?;
    let non_negligible = blocks.iter().filter(|b| !b.negligible).count();
    if non_negligible > m.degree() {
        return Err(Error::VerificationFailed(format!(
            "{non_negligible} non-negligible blocks exceed deg(Γ) = {}",
            m.degree()
        )));
    }
    let fac = |f: &NormalFactor| format!("{} / {}", label(&names, f.upper), label(&names, f.lower));
    let mut table = format!(
        "{} chief blocks, {non_negligible} non-negligible (deg(Γ) = {})\n",
        blocks.len(),
        m.degree()
    );
    let mut out = Vec::new();
    for (k, b) in blocks.iter().enumerate() {
        let cover = if b.negligible {
            None
        } else {
            Some(chief::min_covering_subgroup(lattice, b)?)
        };
        let _ = writeln!(
            table,
            "\nblock {k}: {}{}",
            if b.negligible {
                "negligible"
            } else {
                "non-negligible"
            },
            cover
                .map(|g| format!(", minimal covering subgroup {}", label(&names, g)))
                .unwrap_or_default()
        );
        for f in &b.representatives {
            let _ = writeln!(table, "  {}", fac(f));
        }
        let mut entry = BTreeMap::new();
        entry.insert("representatives", json!(b.representatives));
        entry.insert("negligible", json!(b.negligible));
        entry.insert(
            "negligibility_witness",
            b.negligibility_witness
                .as_ref()
                .map(classification_json)
                .unwrap_or(Value::Null),
        );
        entry.insert(
            "minimal_cover",
            cover
                .map(|g| member_json(lattice, &names, g))
                .unwrap_or(Value::Null),
        );
        out.push(entry);
    }
    Ok(Rendered {
        report: Report {
            schema: REPORT_SCHEMA,
            command: "blocks",
            group: s.describe_group(),
            spec: Some(spec_json(&u_name, &m)),
            result: json!({
                "blocks": out,
                "non_negligible": non_negligible,
                "degree": m.degree(),
            }),
        },
        table,
        dot: None,
    })
}
