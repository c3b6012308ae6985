//! Command-line surface: one subcommand per lab, every cap and seed a
//! flag, reports rendered as text or JSON with a strict exit-code
//! contract.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::approx::{CodeMode, PolynomialCode, DEFAULT_ENUM_CAP};
use crate::centre_lab::{CodeSource, FiberedQuotient, DEFAULT_EXPLICIT_CAP};
use crate::dihedral::{
    decompose, full_order_component, generate_equation, run_worked_example, DihedralEmbedding,
    EquationNaming,
};
use crate::error::{Error, Result};
use crate::group::retract::{find_retraction, RetractionOutcome, DEFAULT_RETRACTION_CAP};
use crate::group::{
    centre, monolith, GroupRef, Subgroup, DEFAULT_LATTICE_CAP, DEFAULT_ORDER_CAP,
};
use crate::report::{RunReport, Status};
use crate::spec::{load_spec, resolve_subgroup};
use crate::structure::{
    centre_factor_report, check_module, core_criteria, has_nonabelian_monolith, GModule,
    DEFAULT_MODULE_CAP,
};
use crate::wordmaps::{decide_verbally_closed, ArityVerdict, DEFAULT_MAP_CAP};
use crate::words::{
    admissible_power_identity_divisors, check_power_identity, parse_equation, solve,
    SolveOutcome, DEFAULT_SOLVE_CAP,
};

#[derive(Parser, Debug)]
#[command(name = "vclab", about = "equations over finite groups: labs and probes", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// seed for every sampling routine
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// worker threads (0 = available parallelism)
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,
    /// write the report here instead of stdout
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a group from a spec document and summarize it
    Group {
        #[arg(long = "g")]
        g: PathBuf,
        /// order cap for construction
        #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
        cap: usize,
    },
    /// Solve an equation file over a search domain
    Solve {
        #[arg(long = "g")]
        g: PathBuf,
        #[arg(long)]
        eq: PathBuf,
        /// search domain: the whole group, or the subgroup from --h
        #[arg(long, default_value = "G")]
        domain: String,
        #[arg(long)]
        h: Option<String>,
        #[arg(long, default_value_t = DEFAULT_SOLVE_CAP)]
        cap: u64,
    },
    /// Bounded verbal-closedness probe via word-map closure
    VerbalClosure {
        #[arg(long = "g")]
        g: PathBuf,
        #[arg(long)]
        h: String,
        #[arg(long, default_value_t = 2)]
        smax: usize,
        /// optional file of probe equations (their left sides are probed)
        #[arg(long)]
        probe: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAP_CAP)]
        map_cap: usize,
        /// sampled words per overflowing arity
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Exhaustive retraction search onto a subgroup
    Retract {
        #[arg(long = "g")]
        g: PathBuf,
        #[arg(long)]
        h: String,
        #[arg(long, default_value_t = DEFAULT_RETRACTION_CAP)]
        cap: usize,
    },
    /// Structure predicates: monolith, core criteria, centre factor,
    /// module homogeneity
    Structure {
        #[arg(long = "g")]
        g: Option<PathBuf>,
        /// normal subgroup selector for the core criteria
        #[arg(long)]
        c: Option<String>,
        /// normal subgroup selector for the centre-factor probe
        #[arg(long)]
        n: Option<String>,
        /// module fixture (JSON) for the homogeneity report
        #[arg(long)]
        module: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_LATTICE_CAP)]
        cap: usize,
    },
    /// Construct the polynomial code and verify its covering properties
    ApproxLemma {
        #[arg(long)]
        p: u8,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        /// explicit degree bound (with --n, overrides paper parameters)
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        /// write the generator matrix as plain-text integer rows
        #[arg(long)]
        export_r: Option<PathBuf>,
        #[arg(long, default_value_t = 1 << 22)]
        t_cap: usize,
    },
    /// Build the fibered quotient over a code and test its properties
    #[command(alias = "build-centre-counterexample")]
    CentreLab {
        #[arg(long)]
        group: PathBuf,
        /// normal subgroup selector (defaults to the whole group)
        #[arg(long)]
        n: Option<String>,
        #[arg(long)]
        p: u8,
        /// explicit copy count (needs --r-file unless the code is trivial)
        #[arg(long)]
        t: Option<usize>,
        /// plain-text code rows over F_p, one row per line
        #[arg(long)]
        r_file: Option<PathBuf>,
        /// use code parameters derived from the subgroup count
        #[arg(long)]
        paper: bool,
        #[arg(long, default_value_t = 400)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_EXPLICIT_CAP)]
        explicit_cap: usize,
        #[arg(long, default_value_t = 2)]
        smax: usize,
    },
    /// Decompose an overgroup, test the component condition, emit the
    /// separating equation
    DihedralAnalyze {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        overgroup_spec: PathBuf,
        /// word naming the rotation generator inside the overgroup
        #[arg(long, default_value = "a")]
        a: String,
        /// word naming the reflection generator
        #[arg(long, default_value = "b")]
        b: String,
        #[arg(long, default_value_t = DEFAULT_SOLVE_CAP)]
        cap: u64,
    },
    /// Symbolic analysis of a word map on unitriangular matrices
    HeisenbergWord {
        #[arg(long)]
        word: String,
        #[arg(long)]
        arity: usize,
        #[arg(long = "box", default_value_t = 5)]
        box_bound: i128,
    },
    /// Reproduce the bundled case-study computations end to end
    PaperExamples,
}

fn read_group(path: &PathBuf, cap: usize) -> Result<GroupRef> {
    load_spec(path)?.build(cap)
}

fn push_retraction(report: &mut RunReport, name: &str, outcome: &RetractionOutcome) {
    match outcome {
        RetractionOutcome::Found(_) => {
            report.push(name, Status::Pass, "FOUND: retraction validated")
        }
        RetractionOutcome::Absent => {
            report.push(name, Status::Absent, "complete search, no retraction exists")
        }
        RetractionOutcome::Unknown(why) => report.push(name, Status::Unknown, why.clone()),
    }
}

pub fn run(cli: Cli) -> Result<RunReport> {
    if cli.common.workers > 0 {
        // ignore failure when a pool is already installed
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.common.workers)
            .build_global();
    }
    let seed = cli.common.seed;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let started = Instant::now();
    let mut report = match &cli.command {
        Command::Group { g, cap } => {
            let mut report = RunReport::new("group", seed);
            let group = read_group(g, *cap)?;
            report.push(
                "order",
                Status::Pass,
                format!("{} elements, {} generators", group.order(), group.generators().len()),
            );
            let names: Vec<&str> =
                group.generators().iter().map(|(n, _)| n.as_str()).collect();
            report.push("generators", Status::Pass, names.join(", "));
            if group.order() <= 512 {
                match group.validate_full() {
                    Ok(()) => report.push(
                        "table-valid",
                        Status::Pass,
                        "associativity, identity, inverses, generation verified",
                    ),
                    Err(e) => report.push("table-valid", Status::Fail, e.to_string()),
                }
            } else {
                report.push(
                    "table-valid",
                    Status::Unknown,
                    "order above 512: exhaustive associativity check skipped",
                );
            }
            report.push(
                "centre",
                Status::Pass,
                format!("order {}", centre(&group).order()),
            );
            report.push(
                "abelian",
                Status::Pass,
                format!("{}", group.is_abelian()),
            );
            if group.order() <= DEFAULT_LATTICE_CAP {
                let m = monolith(&group, DEFAULT_LATTICE_CAP)?;
                let desc = if m.is_trivial() {
                    "trivial (not monolithic)".to_string()
                } else {
                    format!("order {}, abelian: {}", m.order(), m.is_abelian())
                };
                report.push("monolith", Status::Pass, desc);
            }
            report
        }
        Command::Solve { g, eq, domain, h, cap } => {
            let mut report = RunReport::new("solve", seed);
            let group = read_group(g, DEFAULT_ORDER_CAP)?;
            let text = std::fs::read_to_string(eq)?;
            let equation = parse_equation(text.trim())?;
            let dom = match domain.as_str() {
                "G" | "g" => Subgroup::whole(&group),
                "H" | "h" => {
                    let sel = h
                        .as_ref()
                        .ok_or_else(|| Error::Spec("--domain H needs --h".into()))?;
                    resolve_subgroup(&group, sel)?
                }
                other => resolve_subgroup(&group, other)?,
            };
            // coefficients resolve through element names
            let coeff: HashMap<String, u32> = equation
                .rhs
                .letters
                .iter()
                .chain(equation.lhs.letters.iter())
                .filter_map(|l| {
                    group.element_by_name(&l.symbol).map(|i| (l.symbol.clone(), i))
                })
                .collect();
            let outcome = solve(&equation, &group, &coeff, &dom, *cap, true)?;
            match outcome {
                SolveOutcome::Solved(asg) => {
                    let rendered: Vec<String> = asg
                        .iter()
                        .map(|(v, &i)| format!("{v} = {}", group.name(i)))
                        .collect();
                    report.push("solve", Status::Pass, format!("SOLVED: {}", rendered.join(", ")));
                }
                SolveOutcome::Absent => report.push(
                    "solve",
                    Status::Absent,
                    format!("no solution over {} elements per variable", dom.order()),
                ),
                SolveOutcome::Unknown(why) => report.push("solve", Status::Unknown, why),
            }
            report
        }
        Command::VerbalClosure { g, h, smax, probe, map_cap, samples } => {
            let mut report = RunReport::new("verbal-closure", seed);
            let group = read_group(g, DEFAULT_ORDER_CAP)?;
            let sub = resolve_subgroup(&group, h)?;
            let mut probes = Vec::new();
            if let Some(path) = probe {
                let text = std::fs::read_to_string(path)?;
                for line in text.lines().filter(|l| !l.trim().is_empty()) {
                    probes.push(parse_equation(line)?.lhs);
                }
            }
            let verdict = decide_verbally_closed(
                &group, &sub, *smax, *map_cap, &probes, *samples, &mut rng,
            )?;
            for (s, v) in &verdict.per_arity {
                match v {
                    ArityVerdict::Closed { maps_checked } => report.push(
                        format!("arity-{s}"),
                        Status::Pass,
                        format!("CLOSED over all {maps_checked} word maps"),
                    ),
                    ArityVerdict::NotClosed { witness_word, witness_value } => report.push(
                        format!("arity-{s}"),
                        Status::Finding,
                        format!(
                            "NOT closed: word {} reaches {} over G but not over H",
                            witness_word.render(),
                            group.name(*witness_value)
                        ),
                    ),
                    ArityVerdict::SampledOnly { words_checked, finding } => {
                        let detail = match finding {
                            Some((w, v)) => format!(
                                "NOT closed (sampled): {} reaches {}",
                                w.render(),
                                group.name(*v)
                            ),
                            None => format!(
                                "incomplete: closure overflow, {words_checked} sampled words found nothing"
                            ),
                        };
                        report.push(format!("arity-{s}"), Status::Unknown, detail);
                    }
                }
            }
            for (w, finding) in &verdict.probe_results {
                match finding {
                    Some(v) => report.push(
                        format!("probe {}", w.render()),
                        Status::Finding,
                        format!("witness value {}", group.name(*v)),
                    ),
                    None => report.push(
                        format!("probe {}", w.render()),
                        Status::Pass,
                        "no counterexample from this word",
                    ),
                }
            }
            report.push(
                "bound",
                Status::Pass,
                format!("verdicts cover at most {smax} variables; nothing beyond is claimed"),
            );
            report
        }
        Command::Retract { g, h, cap } => {
            let mut report = RunReport::new("retract", seed);
            let group = read_group(g, DEFAULT_ORDER_CAP)?;
            let sub = resolve_subgroup(&group, h)?;
            let outcome = find_retraction(&group, &sub, *cap);
            push_retraction(&mut report, "retract", &outcome);
            report
        }
        Command::Structure { g, c, n, module, cap } => {
            let mut report = RunReport::new("structure", seed);
            if let Some(gpath) = g {
                let group = read_group(gpath, DEFAULT_ORDER_CAP)?;
                let m = monolith(&group, *cap)?;
                report.push(
                    "monolith",
                    Status::Pass,
                    if m.is_trivial() {
                        "trivial".to_string()
                    } else {
                        format!("order {}, abelian: {}", m.order(), m.is_abelian())
                    },
                );
                report.push(
                    "nonabelian-monolith",
                    Status::Pass,
                    format!("{}", has_nonabelian_monolith(&group, *cap)?),
                );
                if let Some(sel) = c {
                    let sub = resolve_subgroup(&group, sel)?;
                    let r = core_criteria(&group, &sub, *cap)?;
                    report.pass(
                        "core-self-centralizing",
                        r.self_centralizing,
                        "",
                    );
                    report.pass("core-indecomposable", r.indecomposable, r.note);
                    report.pass(
                        "core-coprime",
                        r.coprime,
                        format!("|C| = {}, index {}", sub.order(), group.order() / sub.order()),
                    );
                }
                if let Some(sel) = n {
                    let sub = resolve_subgroup(&group, sel)?;
                    let r = centre_factor_report(&group, &sub, *cap)?;
                    report.push(
                        "centre-factor",
                        if r.complement_found() { Status::Pass } else { Status::Finding },
                        format!(
                            "|L| = {}, |Z(L)| = {}, complement {}",
                            r.l_order,
                            r.z_l_order,
                            if r.complement_found() { "found" } else { "not found" }
                        ),
                    );
                    for (p, exists) in &r.psi_exists {
                        report.push(
                            format!("equivariant-map-p{p}"),
                            if *exists { Status::Pass } else { Status::Finding },
                            format!(
                                "injective-on-{p}-part homomorphism {}",
                                if *exists { "exists" } else { "does not exist" }
                            ),
                        );
                    }
                    report.pass(
                        "centre-factor-consistency",
                        r.complement_found() == r.all_psi_exist(),
                        "complement existence must match the homomorphism search",
                    );
                }
            }
            if let Some(path) = module {
                let text = std::fs::read_to_string(path)?;
                let m: GModule = serde_json::from_str(&text)?;
                let r = check_module(&m, DEFAULT_MODULE_CAP, 100_000)?;
                report.push(
                    "module-submodules",
                    Status::Pass,
                    format!("{} submodules enumerated", r.submodule_count),
                );
                report.push(
                    "module-premise",
                    Status::Pass,
                    format!(
                        "all proper submodules smaller exponent: {}",
                        r.premise_small_proper_submodules
                    ),
                );
                for (name, status) in [
                    ("module-homogeneous", r.homogeneous),
                    ("module-layers", r.layers_simple_isomorphic),
                    ("module-bottom-layer", r.bottom_layer_faithfulness),
                    ("module-indecomposable-premise", r.indecomposable_implies_premise),
                ] {
                    let s = match status {
                        crate::structure::ImplicationStatus::Violated => Status::Fail,
                        _ => Status::Pass,
                    };
                    report.push(name, s, status.label());
                }
            }
            report
        }
        Command::ApproxLemma { p, d, k, r, n, export_r, t_cap } => {
            let mut report = RunReport::new("approx-lemma", seed);
            let mode = match (r, n) {
                (Some(r), Some(n)) => CodeMode::Explicit { r: *r, n: *n },
                (None, None) => CodeMode::Paper,
                _ => return Err(Error::Spec("--r and --n go together".into())),
            };
            let code = PolynomialCode::construct(*p, *d, *k, mode, *t_cap)?;
            run_code_checks(&mut report, &code, "", &mut rng)?;
            if let Some(path) = export_r {
                let mut text = String::new();
                for row in code.basis.rows() {
                    let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                    text.push_str(&cells.join(" "));
                    text.push('\n');
                }
                std::fs::write(path, text)?;
                report.push("export", Status::Pass, "generator matrix written");
            }
            report
        }
        Command::CentreLab { group, n, p, t, r_file, paper, samples, explicit_cap, smax } => {
            let mut report = RunReport::new("centre-lab", seed);
            let h = read_group(group, DEFAULT_ORDER_CAP)?;
            let n_sub = n.as_ref().map(|sel| resolve_subgroup(&h, sel)).transpose()?;
            let source = if *paper {
                CodeSource::Paper
            } else {
                let t = t.ok_or_else(|| Error::Spec("--t or --paper is required".into()))?;
                let rows = match r_file {
                    Some(path) => {
                        let text = std::fs::read_to_string(path)?;
                        parse_code_rows(&text)?
                    }
                    None => Vec::new(),
                };
                CodeSource::Explicit { t, rows }
            };
            let fq = FiberedQuotient::build(&h, n_sub, *p, source, *explicit_cap)?;
            run_fibered_checks(&mut report, &fq, *samples, *smax, &mut rng)?;
            report
        }
        Command::DihedralAnalyze { n, overgroup_spec, a, b, cap } => {
            let mut report = RunReport::new("dihedral-analyze", seed);
            let g = read_group(overgroup_spec, DEFAULT_ORDER_CAP)?;
            let a_idx = crate::words::evaluate_constant(&crate::words::parse_word(a)?, &g)?;
            let b_idx = crate::words::evaluate_constant(&crate::words::parse_word(b)?, &g)?;
            let emb = DihedralEmbedding { a: a_idx, b: b_idx, n: *n };
            let h = emb.validate(&g)?;
            let ctx = decompose(&g, *n, None)?;
            report.push(
                "decomposition",
                Status::Pass,
                format!(
                    "|Q| = {}, complement rank {}, component sizes {:?}",
                    ctx.q.order(),
                    ctx.rank(),
                    ctx.components.iter().map(|c| c.len()).collect::<Vec<_>>()
                ),
            );
            report.pass(
                "unique-factorization",
                crate::dihedral::check_unique_factorization(&ctx),
                "every element of Q splits uniquely across components",
            );
            report.pass(
                "doubling-identity",
                crate::dihedral::check_doubling_identity(&ctx),
                "iterated character factors double the matching component",
            );
            for d in admissible_power_identity_divisors(&g) {
                let r = check_power_identity(&g, d);
                report.pass(
                    format!("power-identity-d{d}"),
                    r.hypotheses_ok && r.sets_equal,
                    format!("set size {}", r.set_size),
                );
            }
            let verdict = full_order_component(&ctx, &emb)?;
            report.push(
                "component-condition",
                if verdict.holds { Status::Pass } else { Status::Finding },
                format!(
                    "full order {}, per-character orders {:?}",
                    verdict.full_order,
                    verdict.orders.iter().map(|&(c, o)| (c.mask, o)).collect::<Vec<_>>()
                ),
            );
            if verdict.holds {
                let rho =
                    crate::dihedral::build_retraction(&ctx, &emb, verdict.witness.unwrap())?;
                rho.validate_retraction(&h)?;
                report.push("retraction", Status::Pass, "built and validated");
            } else {
                let eq = generate_equation(&ctx, &emb, &EquationNaming::default())?;
                report.push(
                    "equation-typed",
                    Status::Pass,
                    format!("{} = {}", eq.equation.lhs.render(), eq.equation.rhs.render()),
                );
                report.push(
                    "equation-translated",
                    Status::Pass,
                    format!("{} = {}", eq.translated.lhs.render(), eq.translated.rhs.render()),
                );
                let val = crate::words::evaluate(
                    &eq.translated.lhs,
                    &g,
                    &eq.untyped_witness.iter().map(|(k, &v)| (k.clone(), v)).collect(),
                    &eq.coefficients,
                )?;
                report.pass(
                    "solvable-in-overgroup",
                    val == eq.rhs_element,
                    "constructed witness evaluates to the right side",
                );
                let coeff_names: std::collections::HashSet<String> =
                    eq.coefficients.keys().cloned().collect();
                let var_count = eq.translated.lhs.variables(&coeff_names).len() as u32;
                let space = (h.order() as u64).pow(var_count);
                if space <= *cap {
                    let outcome =
                        crate::dihedral::solve_translated(&g, &eq, &h, *cap, true)?;
                    match outcome {
                        SolveOutcome::Absent => report.push(
                            "unsolvable-in-subgroup",
                            Status::Absent,
                            format!("complete search over {space} assignments"),
                        ),
                        SolveOutcome::Solved(_) => report.push(
                            "unsolvable-in-subgroup",
                            Status::Fail,
                            "unexpected solution found",
                        ),
                        SolveOutcome::Unknown(why) => {
                            report.push("unsolvable-in-subgroup", Status::Unknown, why)
                        }
                    }
                } else {
                    report.push(
                        "unsolvable-in-subgroup",
                        Status::Unknown,
                        format!("assignment space {space} above cap {cap}"),
                    );
                }
                let outcome = find_retraction(&g, &h, DEFAULT_RETRACTION_CAP);
                push_retraction(&mut report, "retraction", &outcome);
            }
            report
        }
        Command::HeisenbergWord { word, arity, box_bound } => {
            let mut report = RunReport::new("heisenberg-word", seed);
            let w = crate::words::parse_word(word)?;
            let bd = crate::heisenberg::extract(&w, *arity)?;
            report.push("linear-form", Status::Pass, format!("{:?}", bd.l));
            let rows: Vec<Vec<i128>> =
                (0..*arity).map(|i| (0..*arity).map(|j| bd.f[(i, j)]).collect()).collect();
            report.push("bilinear-matrix", Status::Pass, format!("{rows:?}"));
            report.pass(
                "skew-on-kernel",
                bd.skew_on_kernel(100, &mut rng),
                "f vanishes on the diagonal of ker l",
            );
            let structure =
                crate::heisenberg::verbal_image_structure(&w, *arity, *box_bound, &mut rng)?;
            report.push(
                "centre-slice",
                Status::Pass,
                format!(
                    "image meets the centre in {}Z (restricted rank {})",
                    structure.centre_gcd, structure.rank_restricted
                ),
            );
            report.pass(
                "box-agreement",
                structure.box_agreement,
                format!("formula matches enumeration within box {box_bound}"),
            );
            match structure.degenerate_note {
                Some(note) => report.push("coset-union", Status::Unknown, note),
                None => report.pass(
                    "coset-union",
                    structure.coset_union_verified,
                    "sampled image elements absorb centre shifts",
                ),
            }
            report
        }
        Command::PaperExamples => {
            let mut report = RunReport::new("paper-examples", seed);
            run_paper_examples(&mut report, &mut rng)?;
            report
        }
    };
    report.time("total", started.elapsed().as_millis());
    Ok(report)
}

fn parse_code_rows(text: &str) -> Result<Vec<Vec<u8>>> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut row = Vec::new();
        for cell in line.split_whitespace() {
            let v: u8 = cell.parse().map_err(|_| Error::Parse {
                line: lineno + 1,
                col: 1,
                msg: format!("bad matrix entry `{cell}`"),
            })?;
            row.push(v);
        }
        rows.push(row);
    }
    Ok(rows)
}

/// The code checks shared by `approx-lemma` and the composite run.
pub fn run_code_checks(
    report: &mut RunReport,
    code: &PolynomialCode,
    prefix: &str,
    rng: &mut ChaCha8Rng,
) -> Result<()> {
    report.push(
        format!("{prefix}parameters"),
        Status::Pass,
        format!(
            "p = {}, d = {}, k = {}, r = {}, n = {}, t = {}, dim = {}",
            code.p,
            code.d,
            code.k,
            code.r,
            code.n,
            code.t,
            code.dim()
        ),
    );
    let zero = code.check_zero_coordinate(DEFAULT_ENUM_CAP, 20_000, rng);
    report.push(
        format!("{prefix}zero-coordinate"),
        Status::from_flag(zero.holds()),
        format!(
            "{} members checked ({})",
            zero.members_checked,
            if zero.exhaustive { "exhaustive" } else { "sampled" }
        ),
    );
    match code.check_interpolation_exhaustive() {
        Ok(r) => report.push(
            format!("{prefix}interpolation"),
            Status::from_flag(r.failures == 0),
            format!("{} systems solved, {} failures", r.solved, r.failures),
        ),
        Err(Error::CapExceeded(_)) => {
            // sampled fallback
            let mut failures = 0usize;
            use rand::Rng;
            for _ in 0..200 {
                let j_set: Vec<usize> =
                    (0..code.k).map(|_| rng.gen_range(0..code.t)).collect();
                let targets: Vec<Vec<u8>> = (0..code.k)
                    .map(|_| (0..code.d).map(|_| rng.gen_range(0..code.p)).collect())
                    .collect();
                if code.interpolate(&j_set, &targets).is_none() {
                    failures += 1;
                }
            }
            report.push(
                format!("{prefix}interpolation"),
                Status::from_flag(failures == 0),
                format!("200 sampled systems, {failures} failures"),
            );
        }
        Err(e) => return Err(e),
    }
    report.pass(
        format!("{prefix}matrix-invariance"),
        code.check_matrix_invariance(),
        "code invariant under the diagonal matrix action",
    );
    let j_set: Vec<usize> = (0..code.k).collect();
    let comp = code.complement_and_projection(&j_set)?;
    report.push(
        format!("{prefix}complement"),
        Status::Pass,
        format!(
            "excluded blocks {:?}, complement blocks {:?}, projection idempotent with kernel R",
            comp.j_prime, comp.complement_blocks
        ),
    );
    Ok(())
}

/// The fibered-quotient checks shared by `centre-lab` and the composite run.
pub fn run_fibered_checks(
    report: &mut RunReport,
    fq: &FiberedQuotient,
    samples: usize,
    smax: usize,
    rng: &mut ChaCha8Rng,
) -> Result<()> {
    report.push(
        "construction",
        Status::Pass,
        format!(
            "|L| = {}, socle dim {}, t = {}, code rank {}{}",
            fq.l.order(),
            fq.d,
            fq.t,
            fq.code.rank(),
            match fq.k {
                Some(k) => format!(", subgroup count k = {k}"),
                None => String::new(),
            }
        ),
    );
    report.push(
        "order",
        Status::Pass,
        format!("|G| = {} ({})", fq.order(), if fq.is_explicit() { "explicit" } else { "implicit" }),
    );
    report.pass(
        "code-normal",
        true,
        "invariance under the conjugation action verified at construction",
    );
    report.pass(
        "diagonal-injective",
        fq.diagonal_injective(),
        "no nonzero constant tuple lies in the code",
    );
    let mech = fq.mechanism_samples(samples, 2, 10, rng)?;
    report.push(
        "closedness-mechanism",
        Status::from_flag(mech.passed()),
        match &mech.failure {
            None => format!("{} sampled word instances", mech.samples_checked),
            Some(f) => f.clone(),
        },
    );
    if fq.is_explicit() {
        let verdict = fq.explicit_verbal_closure(smax, DEFAULT_MAP_CAP, rng)?;
        report.pass(
            "verbal-closure",
            verdict.closed_up_to_bound(),
            format!("complete word-map closure up to {smax} variables"),
        );
    } else {
        report.push(
            "verbal-closure",
            Status::Unknown,
            "implicit representation: sampled mechanism stands in for enumeration",
        );
    }
    let outcome = fq.retraction_verdict(DEFAULT_RETRACTION_CAP);
    push_retraction(report, "retraction", &outcome);
    if let RetractionOutcome::Found(rho) = &outcome {
        report.pass(
            "coordinate-image-containment",
            fq.check_coordinate_image_containment(rho)?,
            "coordinate copies of L map into the double centralizer",
        );
    }
    Ok(())
}

/// The composite run: the worked example, the explicit fibered quotient
/// at t = 3, two code instances, and the fixture words.
pub fn run_paper_examples(report: &mut RunReport, rng: &mut ChaCha8Rng) -> Result<()> {
    // 1. the D3 x D5 case study
    let t0 = Instant::now();
    let cs = run_worked_example()?;
    report.pass("case-study: condition fails", !cs.condition_holds, "");
    report.pass("case-study: typed witness", cs.typed_witness_hits_rhs, "");
    report.pass("case-study: translated witness", cs.translated_witness_hits_rhs, "");
    report.pass(
        "case-study: unsolvable over the dihedral subgroup",
        cs.unsolvable_in_h,
        format!("{} assignments", cs.assignments_scanned),
    );
    report.pass("case-study: case split", cs.case_split_consistent, "");
    report.pass("case-study: no retraction", cs.retraction == "ABSENT", "");
    report.pass("case-study: inverse variant rejected", cs.inverse_variant_rejected, "");
    report.pass("case-study: doubling identity", cs.doubling_identity, "");
    report.time("case-study", t0.elapsed().as_millis());

    // 2. explicit fibered quotient for the order-8 dihedral group at t = 3
    let t0 = Instant::now();
    let d4 = Arc::new(crate::group::build::dihedral(4)?);
    let fq = FiberedQuotient::build(
        &d4,
        None,
        2,
        CodeSource::Explicit { t: 3, rows: vec![vec![1, 1, 0], vec![1, 0, 1]] },
        DEFAULT_EXPLICIT_CAP,
    )?;
    run_fibered_checks(report, &fq, 200, 2, rng)?;
    report.time("fibered-quotient", t0.elapsed().as_millis());

    // 3. polynomial codes at the two smallest parameter sets
    let t0 = Instant::now();
    for (p, d, k) in [(2u8, 1usize, 1usize), (3, 1, 1)] {
        let code = PolynomialCode::construct(p, d, k, CodeMode::Paper, 1 << 22)?;
        run_code_checks(report, &code, &format!("code({p},{d},{k}) "), rng)?;
    }
    report.time("codes", t0.elapsed().as_millis());

    // 4. fixture words on the unitriangular group
    let t0 = Instant::now();
    for text in ["[t1,t2]", "t1^2"] {
        let w = crate::words::parse_word(text)?;
        let arity = if text.contains("t2") { 2 } else { 1 };
        let r = crate::heisenberg::verbal_image_structure(&w, arity, 5, rng)?;
        report.pass(
            format!("word {text}: box agreement"),
            r.box_agreement,
            format!("centre slice {}Z", r.centre_gcd),
        );
        report.pass(
            format!("word {text}: coset union"),
            r.coset_union_verified,
            "",
        );
    }
    report.time("heisenberg", t0.elapsed().as_millis());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_parses_subcommands() {
        let cli = Cli::parse_from([
            "vclab",
            "approx-lemma",
            "--p",
            "2",
            "--d",
            "1",
            "--k",
            "1",
        ]);
        match cli.command {
            Command::ApproxLemma { p: 2, d: 1, k: 1, .. } => {}
            other => panic!("unexpected parse: {other:?}"),
        }
        let cli = Cli::parse_from([
            "vclab",
            "build-centre-counterexample",
            "--group",
            "x.json",
            "--p",
            "2",
            "--paper",
        ]);
        match cli.command {
            Command::CentreLab { p: 2, paper: true, .. } => {}
            other => panic!("unexpected parse: {other:?}"),
        }
    }
}
