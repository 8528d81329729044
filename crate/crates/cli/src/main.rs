//! File-driven entry point: parse lattice and operator files, run the
//! validation and theorem checks, and emit deterministic reports.
//!
//! Exit codes: 0 all checks pass, 1 some check failed, 2 parse/usage error,
//! 3 resource guard tripped.

mod report;

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use quasilat::automorphism::{
    check_coincide, check_psi_phi_adjunction, conjugate_op, enumerate_automorphisms,
};
use quasilat::format::{self, TableFile};
use quasilat::lattice::Lattice;
use quasilat::ops::{
    check_ep, check_ip, check_np, check_op, check_residuation, has_neutral_one, is_associative,
    is_deflationary, max_attained, residuation_failure_search, residuum_table, satisfies_exchange,
    validate_implication, validate_quasi_overlap, BinaryOp, Implication,
};
use quasilat::scott::is_scott_continuous_binary;
use quasilat::{Error, Verdict};

use report::{witness_tokens, Format, Report};

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum OutputFormat {
    Human,
    Records,
}

#[derive(Parser)]
#[command(name = "quasilat", version, about = "Checks for operator tables on finite bounded lattices")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Human)]
    format: OutputFormat,

    /// Print nothing; communicate through the exit code only.
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a lattice file, and optionally an operator, implication or
    /// map table against it.
    Validate {
        lattice: PathBuf,
        table: Option<PathBuf>,
    },
    /// Derive the induced implication of a quasi-overlap and write it out.
    Derive {
        lattice: PathBuf,
        op: PathBuf,
        out: PathBuf,
    },
    /// Run property checks for an operator (or implication) table.
    Check {
        lattice: PathBuf,
        table: PathBuf,
        /// Neutral property of the (derived) implication.
        #[arg(long)]
        np: bool,
        /// Identity principle of the (derived) implication.
        #[arg(long)]
        ip: bool,
        /// Ordering property of the (derived) implication.
        #[arg(long = "op")]
        ordering: bool,
        /// Exchange principle of the (derived) implication.
        #[arg(long)]
        ep: bool,
        /// Associativity and exchange of the operator.
        #[arg(long)]
        assoc: bool,
        /// Residuation principle and attainment of the residuum maxima.
        #[arg(long)]
        residuation: bool,
        /// Scott continuity of the operator table.
        #[arg(long)]
        continuity: bool,
        /// Everything above plus the biconditional cross-checks.
        #[arg(long)]
        all: bool,
    },
    /// List the order automorphisms; optionally sweep conjugations.
    Automorphisms {
        lattice: PathBuf,
        table: Option<PathBuf>,
        /// Validate every conjugated operator.
        #[arg(long)]
        conjugate: bool,
        /// Check that conjugation and implication derivation commute.
        #[arg(long)]
        coincide: bool,
        /// Sweep the psi/phi adjunction reports over all (rho, z).
        #[arg(long)]
        closures: bool,
    },
    /// Sweep the generator catalog for quasi-overlaps whose residuum
    /// supremum is not attained.
    Search {
        #[arg(long = "max-size")]
        max_size: usize,
        #[arg(long, default_value = "residuation-failure", value_parser = ["residuation-failure"])]
        goal: String,
    },
}

/// A command abort with its exit code; check failures exit through the
/// report instead.
struct Failure {
    code: i32,
    msg: String,
}

fn fail(code: i32, msg: impl Into<String>) -> Failure {
    Failure { code, msg: msg.into() }
}

fn abort_code(e: &Error) -> i32 {
    match e {
        Error::TooLarge { .. } => 3,
        _ => 2,
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| fail(2, format!("cannot read {}: {e}", path.display())))
}

fn load_lattice(path: &Path) -> Result<Arc<Lattice>, Failure> {
    let text = read(path)?;
    format::parse_lattice(&text)
        .map(Arc::new)
        .map_err(|e| fail(abort_code(&e), format!("{}: {e}", path.display())))
}

fn load_table(path: &Path, lat: &Arc<Lattice>) -> Result<TableFile, Failure> {
    let text = read(path)?;
    format::parse_table(&text, lat)
        .map_err(|e| fail(abort_code(&e), format!("{}: {e}", path.display())))
}

fn load_op(path: &Path, lat: &Arc<Lattice>) -> Result<BinaryOp, Failure> {
    match load_table(path, lat)? {
        TableFile::Op(op) => Ok(op),
        _ => Err(fail(2, format!("{}: expected an 'op' table", path.display()))),
    }
}

fn main() {
    let cli = Cli::parse();
    let format = match cli.format {
        OutputFormat::Human => Format::Human,
        OutputFormat::Records => Format::Records,
    };
    match run(cli.command) {
        Ok(report) => {
            print!("{}", report.render(format, cli.quiet));
            std::process::exit(report.exit_code());
        }
        Err(f) => {
            if !cli.quiet {
                eprintln!("error: {}", f.msg);
            }
            std::process::exit(f.code);
        }
    }
}

fn run(command: Command) -> Result<Report, Failure> {
    match command {
        Command::Validate { lattice, table } => cmd_validate(&lattice, table.as_deref()),
        Command::Derive { lattice, op, out } => cmd_derive(&lattice, &op, &out),
        Command::Check {
            lattice,
            table,
            np,
            ip,
            ordering,
            ep,
            assoc,
            residuation,
            continuity,
            all,
        } => cmd_check(
            &lattice,
            &table,
            CheckFlags { np, ip, ordering, ep, assoc, residuation, continuity, all },
        ),
        Command::Automorphisms { lattice, table, conjugate, coincide, closures } => {
            cmd_automorphisms(&lattice, table.as_deref(), conjugate, coincide, closures)
        }
        Command::Search { max_size, goal } => cmd_search(max_size, &goal),
    }
}

fn axiom_lines(report: &mut Report, lat: &Lattice, axioms: &quasilat::AxiomReport) {
    for check in &axioms.checks {
        let witness = check.witness.as_ref().map(|w| witness_tokens(lat, w));
        report.check(check.axiom, check.holds, witness);
    }
}

/// Validate the quasi-overlap axioms into the report; `DegenerateLattice`
/// becomes an ordinary failed check.
fn overlap_lines(report: &mut Report, lat: &Lattice, op: &BinaryOp) -> bool {
    match validate_quasi_overlap(op) {
        Ok(axioms) => {
            axiom_lines(report, lat, &axioms);
            axioms.all_hold()
        }
        Err(Error::DegenerateLattice) => {
            report.check("NONDEGENERATE", false, None);
            false
        }
        Err(e) => {
            report.check(format!("error: {e}"), false, None);
            false
        }
    }
}

fn cmd_validate(lattice_path: &Path, table_path: Option<&Path>) -> Result<Report, Failure> {
    let mut cmd = format!("validate {}", lattice_path.display());
    if let Some(t) = table_path {
        cmd.push_str(&format!(" {}", t.display()));
    }
    let mut report = Report::new(cmd);

    let text = read(lattice_path)?;
    let lat = match format::parse_lattice(&text) {
        Ok(l) => Arc::new(l),
        Err(e @ Error::Parse { .. }) => {
            return Err(fail(2, format!("{}: {e}", lattice_path.display())))
        }
        Err(e) => {
            report.check("LATTICE", false, Some(format!("({e})")));
            return Ok(report);
        }
    };
    report.check("LATTICE", true, None);

    if let Some(table_path) = table_path {
        match load_table(table_path, &lat)? {
            TableFile::Op(op) => {
                overlap_lines(&mut report, &lat, &op);
            }
            TableFile::Imp(imp) => {
                axiom_lines(&mut report, &lat, &validate_implication(&imp));
            }
            TableFile::Map(map) => {
                let witness = map
                    .monotone_witness()
                    .map(|(x, y)| witness_tokens(&lat, &[x, y]));
                report.check("MONOTONE", map.is_monotone(), witness);
            }
        }
    }
    Ok(report)
}

fn cmd_derive(lattice_path: &Path, op_path: &Path, out_path: &Path) -> Result<Report, Failure> {
    let mut report = Report::new(format!(
        "derive {} {} {}",
        lattice_path.display(),
        op_path.display(),
        out_path.display()
    ));
    let lat = load_lattice(lattice_path)?;
    let op = load_op(op_path, &lat)?;
    if !overlap_lines(&mut report, &lat, &op) {
        return Ok(report);
    }
    let imp = residuum_table(&op);
    report.verdict("MAX-ATTAINED", &max_attained(&op), &lat);
    report.verdict("RESIDUATION", &check_residuation(&op, &imp), &lat);
    std::fs::write(out_path, format::serialize_implication(&imp))
        .map_err(|e| fail(2, format!("cannot write {}: {e}", out_path.display())))?;
    report.record(
        format!("wrote {}", out_path.display()),
        format!("wrote={}", out_path.display()),
    );
    Ok(report)
}

struct CheckFlags {
    np: bool,
    ip: bool,
    ordering: bool,
    ep: bool,
    assoc: bool,
    residuation: bool,
    continuity: bool,
    all: bool,
}

fn iff(a: &Verdict, b: &Verdict) -> bool {
    a.holds == b.holds
}

fn cmd_check(lattice_path: &Path, table_path: &Path, flags: CheckFlags) -> Result<Report, Failure> {
    let mut report = Report::new(format!(
        "check {} {}",
        lattice_path.display(),
        table_path.display()
    ));
    let lat = load_lattice(lattice_path)?;
    let all = flags.all;

    let (op, imp): (Option<BinaryOp>, Implication) = match load_table(table_path, &lat)? {
        TableFile::Op(op) => {
            if !overlap_lines(&mut report, &lat, &op) {
                return Ok(report);
            }
            let imp = residuum_table(&op);
            (Some(op), imp)
        }
        TableFile::Imp(imp) => {
            if flags.assoc || flags.residuation || flags.continuity {
                return Err(fail(
                    2,
                    "--assoc, --residuation and --continuity need an 'op' table",
                ));
            }
            axiom_lines(&mut report, &lat, &validate_implication(&imp));
            (None, imp)
        }
        TableFile::Map(_) => {
            return Err(fail(2, "check needs an 'op' or 'imp' table"));
        }
    };

    let np = check_np(&imp);
    let ip = check_ip(&imp);
    let ordering = check_op(&imp);
    let ep = check_ep(&imp);
    if flags.np || all {
        report.verdict("NP", &np, &lat);
    }
    if flags.ip || all {
        report.verdict("IP", &ip, &lat);
    }
    if flags.ordering || all {
        report.verdict("OP", &ordering, &lat);
    }
    if flags.ep || all {
        report.verdict("EP", &ep, &lat);
    }

    if let Some(op) = op {
        let assoc = is_associative(&op);
        let exchange = satisfies_exchange(&op);
        if flags.assoc || all {
            report.verdict("ASSOC", &assoc, &lat);
        }
        if all {
            report.verdict("EXCHANGE", &exchange, &lat);
        }
        let residuation = check_residuation(&op, &imp);
        let attained = max_attained(&op);
        if flags.residuation || all {
            report.verdict("RESIDUATION", &residuation, &lat);
            report.verdict("MAX-ATTAINED", &attained, &lat);
        }
        if flags.continuity || all {
            report.check("CONTINUITY", is_scott_continuous_binary(&op), None);
        }
        if all {
            let neutral = has_neutral_one(&op);
            let deflationary = is_deflationary(&op);
            report.verdict("NEUTRAL-ONE", &neutral, &lat);
            report.verdict("DEFLATIONARY", &deflationary, &lat);
            report.check("NP-IFF-NEUTRAL-ONE", iff(&np, &neutral), None);
            report.check("IP-IFF-DEFLATIONARY", iff(&ip, &deflationary), None);
            report.check("OP-IFF-NEUTRAL-ONE", iff(&ordering, &neutral), None);
            report.check("ASSOC-IFF-EXCHANGE", iff(&assoc, &exchange), None);
            report.check("ASSOC-IMPLIES-EP", !assoc.holds || ep.holds, None);
            report.check(
                "RESIDUATION-IFF-MAX-ATTAINED",
                iff(&residuation, &attained),
                None,
            );
        }
    }
    Ok(report)
}

fn cmd_automorphisms(
    lattice_path: &Path,
    table_path: Option<&Path>,
    conjugate: bool,
    coincide: bool,
    closures: bool,
) -> Result<Report, Failure> {
    let mut cmd = format!("automorphisms {}", lattice_path.display());
    if let Some(t) = table_path {
        cmd.push_str(&format!(" {}", t.display()));
    }
    let mut report = Report::new(cmd);
    let lat = load_lattice(lattice_path)?;
    let autos = enumerate_automorphisms(&lat)
        .map_err(|e| fail(abort_code(&e), format!("{}: {e}", lattice_path.display())))?;

    report.record(
        format!("automorphisms count={}", autos.len()),
        format!("automorphisms={}", autos.len()),
    );
    for (i, rho) in autos.iter().enumerate() {
        let images: Vec<&str> = rho.images().iter().map(|&e| lat.token(e)).collect();
        report.record(
            format!("automorphism {i}: {}", images.join(" ")),
            format!("automorphism={i} images={}", images.join("|")),
        );
    }

    let Some(table_path) = table_path else {
        return Ok(report);
    };
    let op = load_op(table_path, &lat)?;
    if !overlap_lines(&mut report, &lat, &op) {
        return Ok(report);
    }

    for (i, rho) in autos.iter().enumerate() {
        if conjugate {
            let conj = conjugate_op(&op, rho)
                .map_err(|e| fail(abort_code(&e), format!("conjugation failed: {e}")))?;
            let axioms = validate_quasi_overlap(&conj)
                .map_err(|e| fail(abort_code(&e), format!("conjugate validation: {e}")))?;
            let witness = axioms
                .first_failure()
                .and_then(|c| c.witness.as_ref())
                .map(|w| witness_tokens(&lat, w));
            report.check(format!("CONJUGATE[rho{i}]"), axioms.all_hold(), witness);
        }
        if coincide {
            let v = check_coincide(&op, rho)
                .map_err(|e| fail(abort_code(&e), format!("coincide failed: {e}")))?;
            report.verdict(format!("COINCIDE[rho{i}]"), &v, &lat);
        }
        if closures {
            for z in lat.elems() {
                let ztok = lat.token(z);
                match check_psi_phi_adjunction(&op, rho, z) {
                    Ok(adj) => {
                        report.verdict(format!("PSIPHI-GALOIS[rho{i},z={ztok}]"), &adj.galois, &lat);
                        report.check(
                            format!("PSIPHI-COMPOSITIONS-CLOSED[rho{i},z={ztok}]"),
                            adj.psi_after_phi.is_closed() && adj.phi_after_psi.is_closed(),
                            None,
                        );
                        report.record(
                            format!(
                                "psi-phi rho{i} z={ztok} psi_closed={} phi_closed={}",
                                adj.psi_closed.is_closed(),
                                adj.phi_closed.is_closed()
                            ),
                            format!(
                                "psiphi=rho{i},z={ztok} psi_closed={} phi_closed={}",
                                adj.psi_closed.is_closed(),
                                adj.phi_closed.is_closed()
                            ),
                        );
                    }
                    Err(Error::NotResiduated) => {
                        report.record(
                            format!("psi-phi rho{i} z={ztok} skipped: conjugate not residuated"),
                            format!("psiphi=rho{i},z={ztok} skipped=not-residuated"),
                        );
                    }
                    Err(e) => return Err(fail(abort_code(&e), format!("psi-phi failed: {e}"))),
                }
            }
        }
    }
    Ok(report)
}

const SEARCH_MAX: usize = 5;

fn cmd_search(max_size: usize, goal: &str) -> Result<Report, Failure> {
    let mut report = Report::new(format!("search --max-size {max_size} --goal {goal}"));
    if max_size > SEARCH_MAX {
        return Err(fail(3, format!("max-size {max_size} exceeds the guard of {SEARCH_MAX}")));
    }
    let outcome = residuation_failure_search(max_size)
        .map_err(|e| fail(abort_code(&e), e.to_string()))?;
    for f in &outcome.failures {
        let lat = f.op.lattice();
        report.record(
            format!(
                "counterexample lattice={} op={} x={} y={}",
                lat.name(),
                f.op_index,
                lat.token(f.x),
                lat.token(f.y)
            ),
            format!(
                "counterexample lattice={} op={} x={} y={}",
                lat.name(),
                f.op_index,
                lat.token(f.x),
                lat.token(f.y)
            ),
        );
    }
    report.record(
        format!(
            "scanned lattices={} ops={}",
            outcome.lattices_scanned, outcome.ops_scanned
        ),
        format!(
            "scanned lattices={} ops={}",
            outcome.lattices_scanned, outcome.ops_scanned
        ),
    );
    if outcome.failures.is_empty() {
        report.record("NONE FOUND", "verdict=none-found");
    } else {
        report.record(
            format!("FOUND count={}", outcome.failures.len()),
            format!("verdict=found count={}", outcome.failures.len()),
        );
    }
    Ok(report)
}
