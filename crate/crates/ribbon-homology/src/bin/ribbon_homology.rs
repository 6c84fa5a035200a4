//! Command-line surface over the library: generator enumeration, boundary
//! application, homology tables, Euler tables, and the verification
//! batteries. All numeric output is exact (rationals print as `p/q`,
//! integers without the `/1`). Output is deterministic: same invocation,
//! byte-identical bytes. Parallelism width follows the `RAYON_NUM_THREADS`
//! environment variable.
//!
//! Exit codes: 0 when the command (and every check it ran) succeeded,
//! 1 when a verification battery found a counterexample, 2 on usage
//! errors (bad flags, unreadable or malformed input files).

use clap::{Parser, Subcommand};
use ribbon_homology::complex::{
    build_slice, enumerate_classes, homology_ranks, ComplexId, EnumerationRequest,
};
use ribbon_homology::contraction::boundary;
use ribbon_homology::graph::{GraphChain, StableRibbonGraph};
use ribbon_homology::scalar::{q, Q};
use ribbon_homology::verify::{
    euler_cell_table, verify_bialgebra, verify_boundary_squares, verify_bracket_oracle,
    verify_ce_square, verify_chain_lines, verify_divergence, verify_projections,
};
use ribbon_homology::wick::{verify_chain_map, verify_hopf, VerifyReport};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "ribbon-homology",
    version,
    about = "Exact-arithmetic calculus for stable ribbon graph complexes, the Lie \
             bialgebra of cyclic words over an odd symplectic space, its two-parameter \
             deformation, and the edge-decoration contraction bridge between them.",
    after_help = "Parallelism width follows RAYON_NUM_THREADS. All output is \
                  deterministic; exact rationals print as p/q."
)]
struct Cli {
    /// Emit a machine-readable JSON object instead of aligned text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List canonical generator classes at an exact edge count.
    Enumerate {
        /// Exact number of edges (>= 1).
        #[arg(long)]
        edges: usize,
        /// Keep only connected graphs of this genus (requires --marked).
        #[arg(long)]
        genus: Option<i64>,
        /// Keep only connected graphs with this many marked points (requires --genus).
        #[arg(long)]
        marked: Option<i64>,
        /// Which family: srgc | krgc | rgc.
        #[arg(long, default_value = "srgc")]
        complex: String,
        /// Keep only connected graphs.
        #[arg(long)]
        connected: bool,
        /// Cap on the total defect weight sum_v(2*g(v) + n(v)) when no
        /// surface filter is given (ignored with --genus/--marked).
        #[arg(long, default_value_t = 2)]
        defect_budget: u32,
        /// Also list classes killed by orientation-reversing automorphisms
        /// (they span nothing; excluded by default).
        #[arg(long)]
        include_flagged: bool,
    },
    /// Apply the contraction boundary to a rational combination of graphs
    /// read from a file, and print the resulting chain.
    Boundary {
        /// File of graph records, one per line, each optionally prefixed
        /// with `coeff * `; blank lines and `#` comments are skipped.
        graph_file: PathBuf,
    },
    /// Betti table of one (complex, genus, marked) slice, degrees
    /// 1..=max-edges (degree = edge count).
    Homology {
        /// Which family: srgc | krgc | rgc.
        #[arg(long, default_value = "srgc")]
        complex: String,
        /// Surface genus.
        #[arg(long)]
        genus: i64,
        /// Number of marked points.
        #[arg(long)]
        marked: i64,
        /// Top degree of the computed window (>= 1).
        #[arg(long)]
        max_edges: usize,
        /// Rank via the dense textbook eliminator instead of the sparse one.
        #[arg(long)]
        dense: bool,
        /// Write each boundary matrix (triplet text) and each degree's
        /// basis listing into this directory.
        #[arg(long)]
        emit_matrices: Option<PathBuf>,
    },
    /// Run one verification battery; exit 1 if any check fails.
    Verify {
        #[command(subcommand)]
        battery: Battery,
    },
    /// Edge-count-alternating cell-count sums per surface type (g, n).
    Euler {
        /// Which family: srgc | krgc | rgc.
        #[arg(long, default_value = "srgc")]
        complex: String,
        /// Count cells with 1..=max-edges edges.
        #[arg(long, default_value_t = 4)]
        max_edges: usize,
        /// Defect-weight cap used to discover which surface types appear;
        /// the per-row counts themselves are exact.
        #[arg(long, default_value_t = 2)]
        defect_budget: u32,
    },
}

#[derive(Subcommand)]
enum Battery {
    /// Squared differentials vanish: the boundary within each graph
    /// complex (one line per generator), and the deformed differential on
    /// the product spanning set (one line per product).
    D2 {
        /// Edge cap for the graph battery; the word side checks products
        /// of total word length <= 2*max-edges.
        #[arg(long, default_value_t = 3)]
        max_edges: usize,
        /// Defect-weight cap for the graph enumeration.
        #[arg(long, default_value_t = 2)]
        defect_budget: u32,
        /// Factor cap for the spanning products.
        #[arg(long, default_value_t = 3)]
        max_factors: usize,
        /// Coordinate dimension d of the underlying space Q^{d|d}.
        #[arg(long, default_value_t = 2)]
        dim: u32,
        /// Also check serialized chains from this file (one chain per
        /// line: `c * gamma^a * nu^b * (w1 | w2 | ...)` terms joined by +).
        #[arg(long)]
        chains: Option<PathBuf>,
    },
    /// Structure laws of the bracket/cobracket pair: odd Jacobi, coJacobi,
    /// involutivity, and the cocycle compatibility.
    Bialgebra {
        /// Coordinate dimension d of Q^{d|d}.
        #[arg(long, default_value_t = 2)]
        dim: u32,
        /// Word-length cap for Jacobi triples.
        #[arg(long, default_value_t = 3)]
        jacobi_len: usize,
        /// Word-length cap for coJacobi and involutivity monomials.
        #[arg(long, default_value_t = 4)]
        co_len: usize,
        /// Total-length cap for cocycle pairs.
        #[arg(long, default_value_t = 5)]
        cocycle_total: usize,
    },
    /// Divergence laws: the commutator expansion over monomial fields and
    /// the -1/2 divergence route to the cobracket.
    Divergence {
        /// Coordinate dimension d of Q^{d|d}.
        #[arg(long, default_value_t = 2)]
        dim: u32,
        /// Coefficient-word length cap for the monomial fields.
        #[arg(long, default_value_t = 2)]
        field_len: usize,
        /// Word-length cap for the two-route comparison.
        #[arg(long, default_value_t = 4)]
        route_len: usize,
    },
    /// The bracket against its two-step oracle: {a,b} must equal the Lie
    /// derivative of b along the field of a.
    BracketOracle {
        /// Coordinate dimension d of Q^{d|d}.
        #[arg(long, default_value_t = 2)]
        dim: u32,
        /// Word-length cap for the monomial pairs.
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
    /// The edge-decoration map intertwines the deformed differential with
    /// graph contraction, per generator, including both sub-families.
    Chainmap {
        /// Edge cap for the generators checked.
        #[arg(long, default_value_t = 3)]
        max_edges: usize,
        /// Defect-weight cap for the graph enumeration.
        #[arg(long, default_value_t = 2)]
        defect_budget: u32,
    },
    /// Multiplicativity of the edge-decoration map on disjoint unions, per
    /// ordered pair of connected generators.
    Hopf {
        /// Edge cap for each factor of the union.
        #[arg(long, default_value_t = 2)]
        max_edges: usize,
        /// Defect-weight cap for the graph enumeration.
        #[arg(long, default_value_t = 2)]
        defect_budget: u32,
    },
    /// Both sub-family projections commute with the boundary, per
    /// generator and family.
    Projections {
        /// Edge cap for the generators checked.
        #[arg(long, default_value_t = 4)]
        max_edges: usize,
        /// Defect-weight cap for the graph enumeration.
        #[arg(long, default_value_t = 2)]
        defect_budget: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Ok(true): success. Ok(false): a verification battery failed (exit 1).
/// Err: usage-class error (exit 2).
fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Enumerate {
            edges,
            genus,
            marked,
            complex,
            connected,
            defect_budget,
            include_flagged,
        } => {
            if edges == 0 {
                return Err("--edges must be at least 1 (a graph here has at least one edge)".into());
            }
            let complex = ComplexId::parse(&complex)?;
            let surface = match (genus, marked) {
                (Some(g), Some(n)) => Some((g, n)),
                (None, None) => None,
                _ => return Err("--genus and --marked must be given together".into()),
            };
            let mut req = EnumerationRequest::new(edges, complex);
            req.surface = surface;
            req.connected = connected || surface.is_some();
            req.defect_budget = defect_budget;
            req.include_flagged = include_flagged;
            let classes = enumerate_classes(&req);
            print_enumeration(cli.json, &req, &classes);
            Ok(true)
        }
        Command::Boundary { graph_file } => {
            let text = read_file(&graph_file)?;
            let mut input = GraphChain::zero();
            let mut parsed = 0usize;
            for (idx, raw) in text.lines().enumerate() {
                let line = raw.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (coeff, g) = parse_graph_line(line)
                    .map_err(|e| format!("{}:{}: {e}", graph_file.display(), idx + 1))?;
                input.add_graph(&g, coeff);
                parsed += 1;
            }
            let out = boundary(&input);
            print_boundary(cli.json, parsed, &input, &out);
            Ok(true)
        }
        Command::Homology {
            complex,
            genus,
            marked,
            max_edges,
            dense,
            emit_matrices,
        } => {
            if max_edges == 0 {
                return Err("--max-edges must be at least 1".into());
            }
            let complex = ComplexId::parse(&complex)?;
            let slice = build_slice(complex, Some((genus, marked)), true, max_edges, 2);
            let table = homology_ranks(&slice, dense);
            if let Some(dir) = &emit_matrices {
                write_matrices(dir, &slice)?;
            }
            print_homology(
                cli.json,
                complex,
                (genus, marked),
                max_edges,
                dense,
                emit_matrices.as_deref(),
                &slice,
                &table,
            );
            Ok(true)
        }
        Command::Euler {
            complex,
            max_edges,
            defect_budget,
        } => {
            if max_edges == 0 {
                return Err("--max-edges must be at least 1".into());
            }
            let complex = ComplexId::parse(&complex)?;
            let rows = euler_cell_table(complex, max_edges, defect_budget);
            print_euler(cli.json, complex, max_edges, defect_budget, &rows);
            Ok(true)
        }
        Command::Verify { battery } => run_verify(cli.json, battery),
    }
}

fn read_file(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

/// `coeff * record` or bare `record`, where record starts with `E=`.
fn parse_graph_line(line: &str) -> Result<(Q, StableRibbonGraph), String> {
    let (coeff, record) = match line.find(" * ") {
        Some(pos) if !line[..pos].contains('=') => {
            let c: Q = line[..pos]
                .trim()
                .parse()
                .map_err(|e| format!("bad coefficient {:?}: {e}", &line[..pos]))?;
            (c, line[pos + 3..].trim())
        }
        _ => (q(1), line),
    };
    let g = StableRibbonGraph::parse_record(record)?;
    Ok((coeff, g))
}

// -------------------------------------------------------------------
// verification dispatch
// -------------------------------------------------------------------

fn run_verify(json: bool, battery: Battery) -> Result<bool, String> {
    let (name, sections): (&str, Vec<(String, VerifyReport)>) = match battery {
        Battery::D2 {
            max_edges,
            defect_budget,
            max_factors,
            dim,
            chains,
        } => {
            if max_edges == 0 {
                return Err("--max-edges must be at least 1".into());
            }
            let mut sections = vec![
                (
                    format!("graph boundary squared, <= {max_edges} edges"),
                    verify_boundary_squares(max_edges, defect_budget),
                ),
                (
                    format!(
                        "deformed differential squared, <= {max_factors} factors, total length <= {}",
                        2 * max_edges
                    ),
                    verify_ce_square(dim, max_factors, 2 * max_edges),
                ),
            ];
            if let Some(path) = chains {
                let text = read_file(&path)?;
                sections.push((
                    format!("deformed differential squared on chains from {}", path.display()),
                    verify_chain_lines(dim, &text),
                ));
            }
            ("d2", sections)
        }
        Battery::Bialgebra {
            dim,
            jacobi_len,
            co_len,
            cocycle_total,
        } => (
            "bialgebra",
            vec![(
                "bracket/cobracket structure laws".to_string(),
                verify_bialgebra(dim, jacobi_len, co_len, cocycle_total),
            )],
        ),
        Battery::Divergence {
            dim,
            field_len,
            route_len,
        } => (
            "divergence",
            vec![(
                "divergence laws".to_string(),
                verify_divergence(dim, field_len, route_len),
            )],
        ),
        Battery::BracketOracle { dim, max_len } => (
            "bracket-oracle",
            vec![(
                "bracket vs Lie-derivative oracle".to_string(),
                verify_bracket_oracle(dim, max_len),
            )],
        ),
        Battery::Chainmap {
            max_edges,
            defect_budget,
        } => (
            "chainmap",
            vec![(
                format!("contraction intertwiner, <= {max_edges} edges"),
                verify_chain_map(max_edges, defect_budget),
            )],
        ),
        Battery::Hopf {
            max_edges,
            defect_budget,
        } => (
            "hopf",
            vec![(
                format!("union multiplicativity, <= {max_edges} edges per factor"),
                verify_hopf(max_edges, defect_budget),
            )],
        ),
        Battery::Projections {
            max_edges,
            defect_budget,
        } => (
            "projections",
            vec![(
                format!("sub-family projections, <= {max_edges} edges"),
                verify_projections(max_edges, defect_budget),
            )],
        ),
    };

    let total: usize = sections.iter().map(|(_, r)| r.lines.len()).sum();
    let ok = sections.iter().all(|(_, r)| r.all_ok());
    if json {
        let mut out = String::new();
        let _ = write!(
            out,
            "{{\"command\":\"verify\",\"battery\":{},\"ok\":{ok},\"checks\":{total},\"sections\":[",
            jstr(name)
        );
        for (i, (title, report)) in sections.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(
                out,
                "{{\"title\":{},\"ok\":{},\"lines\":[",
                jstr(title),
                report.all_ok()
            );
            for (j, l) in report.lines.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                let _ = write!(
                    out,
                    "{{\"case\":{},\"ok\":{},\"detail\":{}}}",
                    jstr(&l.encoding),
                    l.ok,
                    jstr(&l.detail)
                );
            }
            out.push_str("]}");
        }
        out.push_str("]}");
        println!("{out}");
    } else {
        for (title, report) in &sections {
            println!("# {title}");
            let width = report
                .lines
                .iter()
                .map(|l| l.encoding.len())
                .max()
                .unwrap_or(0);
            for l in &report.lines {
                let text = format!(
                    "{:<width$}  {:<4}  {}",
                    l.encoding,
                    if l.ok { "ok" } else { "FAIL" },
                    l.detail,
                    width = width
                );
                println!("{}", text.trim_end());
            }
        }
        println!("# verify {name}: {total} checks, {}", if ok { "all ok".to_string() } else {
            format!(
                "{} FAILED",
                sections.iter().map(|(_, r)| r.failures().len()).sum::<usize>()
            )
        });
        if !ok {
            let first = sections
                .iter()
                .flat_map(|(_, r)| r.failures())
                .next()
                .unwrap();
            println!("first counterexample: {} — {}", first.encoding, first.detail);
        }
    }
    Ok(ok)
}

// -------------------------------------------------------------------
// output formatting
// -------------------------------------------------------------------

fn jstr(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn print_table(headers: &[&str], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let fmt_row = |cells: Vec<&str>| {
        let mut line = String::new();
        for (i, cell) in cells.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            let _ = write!(line, "{:<width$}", cell, width = widths[i]);
        }
        println!("{}", line.trim_end());
    };
    fmt_row(headers.to_vec());
    for row in rows {
        fmt_row(row.iter().map(String::as_str).collect());
    }
}

fn print_enumeration(json: bool, req: &EnumerationRequest, classes: &[ribbon_homology::graph::GraphClass]) {
    if json {
        let mut out = String::new();
        let _ = write!(
            out,
            "{{\"command\":\"enumerate\",\"complex\":{},\"edges\":{},\"connected\":{},\"surface\":{},\"defect_budget\":{},\"include_flagged\":{},\"count\":{},\"classes\":[",
            jstr(&req.complex.to_string()),
            req.edges,
            req.connected,
            match req.surface {
                Some((g, n)) => format!("[{g},{n}]"),
                None => "null".to_string(),
            },
            req.defect_budget,
            req.include_flagged,
            classes.len()
        );
        for (i, c) in classes.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let surface = match c.representative.recover_g_n() {
                Ok((g, n)) => format!("[{g},{n}]"),
                Err(_) => "null".to_string(),
            };
            let _ = write!(
                out,
                "{{\"class\":{},\"automorphisms\":{},\"surface\":{},\"flagged\":{},\"record\":{}}}",
                jstr(&c.encoding),
                c.automorphisms,
                surface,
                c.zero_flagged,
                jstr(&c.representative.to_record())
            );
        }
        out.push_str("]}");
        println!("{out}");
    } else {
        println!(
            "# {} classes: complex {}, edges={}{}{}{}",
            classes.len(),
            req.complex,
            req.edges,
            match req.surface {
                Some((g, n)) => format!(", surface (g,n)=({g},{n})"),
                None => format!(", defect budget {}", req.defect_budget),
            },
            if req.connected { ", connected" } else { "" },
            if req.include_flagged { ", flagged included" } else { "" },
        );
        let rows: Vec<Vec<String>> = classes
            .iter()
            .map(|c| {
                vec![
                    c.encoding.clone(),
                    c.automorphisms.to_string(),
                    match c.representative.recover_g_n() {
                        Ok((g, n)) => format!("({g},{n})"),
                        Err(_) => "-".to_string(),
                    },
                    if c.zero_flagged { "yes" } else { "no" }.to_string(),
                    c.representative.to_record(),
                ]
            })
            .collect();
        print_table(&["class", "aut", "surface", "flagged", "record"], &rows);
    }
}

fn print_boundary(json: bool, parsed: usize, input: &GraphChain, out_chain: &GraphChain) {
    if json {
        let mut out = String::new();
        let _ = write!(
            out,
            "{{\"command\":\"boundary\",\"input_lines\":{parsed},\"input_terms\":{},\"terms\":[",
            input.terms.len()
        );
        for (i, (k, v)) in out_chain.terms.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(
                out,
                "{{\"coefficient\":{},\"class\":{},\"record\":{}}}",
                jstr(&v.to_string()),
                jstr(&k.encoding),
                jstr(&k.representative.to_record())
            );
        }
        out.push_str("]}");
        println!("{out}");
    } else {
        println!(
            "# boundary of {} canonical terms (from {parsed} input lines): {} terms",
            input.terms.len(),
            out_chain.terms.len()
        );
        if out_chain.is_zero() {
            println!("0");
        } else {
            for (k, v) in &out_chain.terms {
                println!("{v} * {}", k.representative.to_record());
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn print_homology(
    json: bool,
    complex: ComplexId,
    (genus, marked): (i64, i64),
    max_edges: usize,
    dense: bool,
    matrices_dir: Option<&Path>,
    slice: &ribbon_homology::complex::ComplexSlice,
    table: &ribbon_homology::complex::HomologyTable,
) {
    if json {
        let mut out = String::new();
        let _ = write!(
            out,
            "{{\"command\":\"homology\",\"complex\":{},\"genus\":{genus},\"marked\":{marked},\"max_edges\":{max_edges},\"engine\":{},\"note\":\"unaugmented graph-complex homology; top degree relative to the truncation\",\"rows\":[",
            jstr(&complex.to_string()),
            jstr(if dense { "dense" } else { "sparse" })
        );
        for (i, &(k, dim, rank, betti)) in table.rows.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(
                out,
                "{{\"degree\":{k},\"dim\":{dim},\"rank\":{rank},\"betti\":{betti}}}"
            );
        }
        let _ = write!(
            out,
            "],\"euler_betti\":{},\"euler_dims\":{}",
            table.euler_from_betti(),
            table.euler_from_dims()
        );
        if let Some(dir) = matrices_dir {
            let _ = write!(out, ",\"matrices_dir\":{}", jstr(&dir.display().to_string()));
        }
        out.push('}');
        println!("{out}");
    } else {
        println!(
            "# unaugmented graph-complex homology of {complex}, surface (g,n)=({genus},{marked})"
        );
        println!(
            "# degree = edge count, window 1..={max_edges}; betti in the top degree is relative to the truncation"
        );
        println!("# rank engine: {} elimination", if dense { "dense" } else { "sparse" });
        let rows: Vec<Vec<String>> = table
            .rows
            .iter()
            .map(|&(k, dim, rank, betti)| {
                vec![
                    k.to_string(),
                    dim.to_string(),
                    rank.to_string(),
                    betti.to_string(),
                ]
            })
            .collect();
        print_table(&["degree", "dim", "rank d", "betti"], &rows);
        println!(
            "euler: {} from betti, {} from dimensions",
            table.euler_from_betti(),
            table.euler_from_dims()
        );
        if let Some(dir) = matrices_dir {
            let _ = slice; // bases/matrices written by write_matrices
            println!("# matrices and bases written to {}", dir.display());
        }
    }
}

fn write_matrices(dir: &Path, slice: &ribbon_homology::complex::ComplexSlice) -> Result<(), String> {
    std::fs::create_dir_all(dir).map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
    let write = |name: String, contents: String| -> Result<(), String> {
        let path = dir.join(name);
        std::fs::write(&path, contents).map_err(|e| format!("cannot write {}: {e}", path.display()))
    };
    for k in 0..=slice.max_edges {
        let mut basis = String::new();
        for class in &slice.bases[k] {
            let _ = writeln!(basis, "{}", class.encoding);
        }
        write(format!("basis_{k}.txt"), basis)?;
        if k >= 1 {
            write(format!("boundary_{k}.txt"), slice.matrices[k].to_triplet_text())?;
        }
    }
    Ok(())
}

fn print_euler(
    json: bool,
    complex: ComplexId,
    max_edges: usize,
    defect_budget: u32,
    rows: &[ribbon_homology::verify::EulerRow],
) {
    if json {
        let mut out = String::new();
        let _ = write!(
            out,
            "{{\"command\":\"euler\",\"complex\":{},\"max_edges\":{max_edges},\"defect_budget\":{defect_budget},\"rows\":[",
            jstr(&complex.to_string())
        );
        for (i, r) in rows.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let counts: Vec<String> = r.counts.iter().map(ToString::to_string).collect();
            let _ = write!(
                out,
                "{{\"genus\":{},\"marked\":{},\"counts\":[{}],\"alternating_sum\":{}}}",
                r.genus,
                r.marked,
                counts.join(","),
                r.alternating_sum
            );
        }
        out.push_str("]}");
        println!("{out}");
    } else {
        println!(
            "# connected cell counts of {complex} per edge degree, with sum_E (-1)^E count(E)"
        );
        println!(
            "# degrees 1..={max_edges}; surface types discovered within defect budget {defect_budget}"
        );
        let mut headers: Vec<String> = vec!["genus".into(), "marked".into()];
        for e in 1..=max_edges {
            headers.push(format!("e={e}"));
        }
        headers.push("alternating".into());
        let header_refs: Vec<&str> = headers.iter().map(String::as_str).collect();
        let table_rows: Vec<Vec<String>> = rows
            .iter()
            .map(|r| {
                let mut row = vec![r.genus.to_string(), r.marked.to_string()];
                row.extend(r.counts.iter().map(ToString::to_string));
                row.push(r.alternating_sum.to_string());
                row
            })
            .collect();
        print_table(&header_refs, &table_rows);
    }
}
