//! Command definitions and execution. Exit-code contract: 0 = verdict
//! produced, 1 = invalid input or bounds, 2 = internal cross-check
//! disagreement.

use std::fs::File;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::json;

use matchcert_core::fq::{ExtensionField, FqSubspace};
use matchcert_core::fq_matching::{
    construct_unmatchable_linear, criterion_verdict, decide_linear,
    definitional_oracle, verify_linear_certificate, LinearOutcome,
};
use matchcert_core::group::{FiniteAbelianGroup, GroupSubset};
use matchcert_core::group_matching::{
    construct_unmatchable_group, decide_with_bound,
    naive_unmatchability_witness_with_bound, verify_certificate, GroupVerdict,
};
use matchcert_core::Error as CoreError;

use crate::census::{run_field_census, run_group_census, CensusConfig, CensusMode};
use crate::spec::{
    self, parse_field_desc, parse_group_desc, ElementJson, GroupDesc, ParsedProblem,
    ProblemSpec,
};
use crate::verdict::{
    field_verdict_json, group_certificate_json, group_set_json, group_verdict_json,
    linear_certificate_json, subspace_json,
};
use crate::{CliFailure, OutputFormat, EXIT_INCONSISTENT, EXIT_INVALID};

/// Decides matchability of subset pairs in finite abelian groups and
/// subspace pairs in finite field extensions, with witnesses and
/// certificates.
#[derive(Debug, Parser)]
#[command(name = "matchcert", version)]
pub struct Cli {
    /// Run every applicable decider and fail (exit 2) on any disagreement.
    #[arg(long, global = true)]
    pub xcheck: bool,
    /// Seed for sampled censuses.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Sample this many random pairs instead of running exhaustively.
    #[arg(long, global = true)]
    pub sample: Option<u64>,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format: json (default for check/construct), jsonl (default
    /// for census), or table.
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Worker threads for census runs; output bytes do not depend on this.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Add per-record timing to census output (makes bytes nondeterministic).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: SettingCommand,
}

#[derive(Debug, Subcommand)]
pub enum SettingCommand {
    /// Pairs of finite subsets of a finite abelian group.
    Group {
        #[command(subcommand)]
        action: GroupAction,
    },
    /// Pairs of subspaces of a finite field extension.
    Field {
        #[command(subcommand)]
        action: FieldAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum GroupAction {
    /// Decide one pair; emits a witness or a certificate.
    Check {
        /// Group, e.g. "Z12", "Z2xZ6", or a JSON factor list "[2,6]".
        #[arg(long)]
        group: Option<String>,
        /// Set A as a JSON array of elements, e.g. "[0,1,3,6,9]".
        #[arg(long)]
        a: Option<String>,
        /// Set B as a JSON array of elements.
        #[arg(long)]
        b: Option<String>,
        /// Read the problem from a JSON spec file ("-" for stdin) instead.
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Decide every pair of a given size (or a seeded sample).
    Census {
        #[arg(long)]
        group: String,
        /// Common size of A and B.
        #[arg(long)]
        n: usize,
    },
    /// Build an unmatchable pair of a given size with its certificate.
    Construct {
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum FieldAction {
    /// Decide one pair; emits a certificate when unmatchable.
    Check {
        /// Base field characteristic (prime).
        #[arg(long)]
        p: Option<u64>,
        /// Extension degree.
        #[arg(long)]
        m: Option<usize>,
        /// Monic modulus polynomial as ascending JSON coefficients; built-in
        /// default when omitted.
        #[arg(long)]
        modulus: Option<String>,
        /// Subspace A as a JSON array of basis rows, e.g. "[[0,1,0,0],[0,0,1,1]]".
        #[arg(long)]
        a: Option<String>,
        /// Subspace B as a JSON array of basis rows.
        #[arg(long)]
        b: Option<String>,
        /// Read the problem from a JSON spec file ("-" for stdin) instead.
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Decide every pair of a given dimension (or a seeded sample).
    Census {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        modulus: Option<String>,
        /// Common dimension of A and B.
        #[arg(long)]
        n: usize,
    },
    /// Build an unmatchable pair of a given dimension with its certificate.
    Construct {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        modulus: Option<String>,
        #[arg(long)]
        n: usize,
    },
}

pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), CliFailure> {
    match cli.out.clone() {
        Some(path) => {
            let mut file = File::create(&path).map_err(|e| {
                CliFailure::new(EXIT_INVALID, format!("cannot create {}: {e}", path.display()))
            })?;
            dispatch(&cli, &mut file)
        }
        None => dispatch(&cli, out),
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<(), CliFailure> {
    match &cli.command {
        SettingCommand::Group { action } => match action {
            GroupAction::Check { group, a, b, spec } => {
                let (g, a, b, options) =
                    resolve_group_problem(spec.as_deref(), group.as_deref(), a.as_deref(), b.as_deref())?;
                group_check(cli, out, &g, &a, &b, &options)
            }
            GroupAction::Census { group, n } => {
                let g = group_from_arg(group)?;
                let cfg = census_config(cli, OutputFormat::Jsonl)?;
                run_group_census(&g, *n, &cfg, out)?;
                Ok(())
            }
            GroupAction::Construct { group, n } => {
                let g = group_from_arg(group)?;
                group_construct(cli, out, &g, *n)
            }
        },
        SettingCommand::Field { action } => match action {
            FieldAction::Check { p, m, modulus, a, b, spec } => {
                let (l, a, b) = resolve_field_problem(
                    spec.as_deref(),
                    *p,
                    *m,
                    modulus.as_deref(),
                    a.as_deref(),
                    b.as_deref(),
                )?;
                field_check(cli, out, &l, &a, &b)
            }
            FieldAction::Census { p, m, modulus, n } => {
                let l = field_from_args(*p, *m, modulus.as_deref())?;
                let cfg = census_config(cli, OutputFormat::Jsonl)?;
                run_field_census(&l, *n, &cfg, out)?;
                Ok(())
            }
            FieldAction::Construct { p, m, modulus, n } => {
                let l = field_from_args(*p, *m, modulus.as_deref())?;
                field_construct(cli, out, &l, *n)
            }
        },
    }
}

fn invalid(message: impl Into<String>) -> CliFailure {
    CliFailure::new(EXIT_INVALID, message.into())
}


fn census_config(cli: &Cli, default_format: OutputFormat) -> Result<CensusConfig, CliFailure> {
    let mode = match cli.sample {
        Some(count) => {
            let seed = cli
                .seed
                .ok_or_else(|| invalid("sample mode requires --seed"))?;
            CensusMode::Sample { count, seed }
        }
        None => CensusMode::Exhaustive,
    };
    Ok(CensusConfig {
        mode,
        xcheck: cli.xcheck,
        timing: cli.timing,
        workers: cli.workers,
        format: cli.format.unwrap_or(default_format),
    })
}

fn group_from_arg(arg: &str) -> Result<FiniteAbelianGroup, CliFailure> {
    let desc = if arg.trim_start().starts_with('[') {
        GroupDesc::Factors(serde_json::from_str(arg).map_err(|e| invalid(e.to_string()))?)
    } else {
        GroupDesc::Shorthand(arg.to_string())
    };
    parse_group_desc(&desc).map_err(invalid)
}

fn field_from_args(
    p: u64,
    m: usize,
    modulus: Option<&str>,
) -> Result<ExtensionField, CliFailure> {
    let modulus = match modulus {
        Some(text) => {
            Some(serde_json::from_str::<Vec<u64>>(text).map_err(|e| invalid(e.to_string()))?)
        }
        None => None,
    };
    parse_field_desc(&spec::FieldDesc { p, m, modulus }).map_err(invalid)
}

fn read_spec(path: &Path) -> Result<ProblemSpec, CliFailure> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| invalid(e.to_string()))?;
    } else {
        text = std::fs::read_to_string(path)
            .map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
    }
    serde_json::from_str(&text).map_err(|e| invalid(format!("spec parse failure: {e}")))
}

fn elements_from_arg(arg: &str) -> Result<Vec<ElementJson>, CliFailure> {
    serde_json::from_str(arg).map_err(|e| invalid(format!("element list parse failure: {e}")))
}

fn resolve_group_problem(
    spec_path: Option<&Path>,
    group: Option<&str>,
    a: Option<&str>,
    b: Option<&str>,
) -> Result<(FiniteAbelianGroup, GroupSubset, GroupSubset, spec::Options), CliFailure> {
    if let Some(path) = spec_path {
        let spec = read_spec(path)?;
        match spec::parse_problem(&spec).map_err(invalid)? {
            ParsedProblem::Group { group, a, b } => Ok((group, a, b, spec.options)),
            ParsedProblem::Field { .. } => {
                Err(invalid("spec has setting \"field\"; use `field check --spec`"))
            }
        }
    } else {
        let (Some(group), Some(a), Some(b)) = (group, a, b) else {
            return Err(invalid("provide --group, --a and --b, or --spec"));
        };
        let g = group_from_arg(group)?;
        let a = spec::parse_group_set(&g, &elements_from_arg(a)?).map_err(invalid)?;
        let b = spec::parse_group_set(&g, &elements_from_arg(b)?).map_err(invalid)?;
        Ok((g, a, b, spec::Options::default()))
    }
}

fn resolve_field_problem(
    spec_path: Option<&Path>,
    p: Option<u64>,
    m: Option<usize>,
    modulus: Option<&str>,
    a: Option<&str>,
    b: Option<&str>,
) -> Result<(ExtensionField, FqSubspace, FqSubspace), CliFailure> {
    if let Some(path) = spec_path {
        let spec = read_spec(path)?;
        match spec::parse_problem(&spec).map_err(invalid)? {
            ParsedProblem::Field { field, a, b } => Ok((field, a, b)),
            ParsedProblem::Group { .. } => {
                Err(invalid("spec has setting \"group\"; use `group check --spec`"))
            }
        }
    } else {
        let (Some(p), Some(m), Some(a), Some(b)) = (p, m, a, b) else {
            return Err(invalid("provide --p, --m, --a and --b, or --spec"));
        };
        let l = field_from_args(p, m, modulus)?;
        let a = spec::parse_subspace(&l, &elements_from_arg(a)?).map_err(invalid)?;
        let b = spec::parse_subspace(&l, &elements_from_arg(b)?).map_err(invalid)?;
        Ok((l, a, b))
    }
}

fn group_check(
    cli: &Cli,
    out: &mut dyn Write,
    g: &FiniteAbelianGroup,
    a: &GroupSubset,
    b: &GroupSubset,
    options: &spec::Options,
) -> Result<(), CliFailure> {
    let bounds = options.bounds.clone().unwrap_or_default();
    let subgroup_bound = bounds
        .subgroup_order
        .unwrap_or(matchcert_core::group::DEFAULT_SUBGROUP_ENUMERATION_BOUND);
    let naive_bound = bounds
        .naive_size
        .unwrap_or(matchcert_core::group_matching::DEFAULT_NAIVE_ENUMERATION_BOUND);
    let verdict = decide_with_bound(g, a, b, subgroup_bound).map_err(CliFailure::from)?;
    let matchable = matches!(verdict, GroupVerdict::Matchable(_));
    let mut crossed: Vec<&str> = Vec::new();
    if cli.xcheck {
        match naive_unmatchability_witness_with_bound(g, a, b, naive_bound) {
            Ok(witness) => {
                if witness.is_some() == matchable {
                    return Err(CliFailure::new(
                        EXIT_INCONSISTENT,
                        format!("exhaustive oracle disagrees on A = {a}, B = {b}"),
                    ));
                }
                crossed.push("naive_unmatchability_witness");
            }
            // out of bounds or identity in B: the oracle does not apply
            Err(CoreError::InvalidInput(_)) | Err(CoreError::PreconditionViolated(_)) => {}
            Err(e) => return Err(core_failure(e)),
        }
    }
    let value = group_verdict_json(g, a, b, &verdict, &crossed);
    match cli.format.unwrap_or(OutputFormat::Json) {
        OutputFormat::Table => {
            writeln!(out, "setting=group group={g} matchable={matchable}")
                .map_err(|e| invalid(e.to_string()))?;
            match &verdict {
                GroupVerdict::Matchable(w) => {
                    let pairs: Vec<String> = w
                        .assignment()
                        .iter()
                        .map(|(x, y)| format!("{x}->{y}"))
                        .collect();
                    writeln!(out, "witness: {}", pairs.join(" "))
                }
                GroupVerdict::Unmatchable(c) => writeln!(
                    out,
                    "certificate: R={} S={} Y={} Z={}",
                    c.r, c.s, c.y, c.z
                ),
            }
            .map_err(|e| invalid(e.to_string()))
        }
        _ => writeln!(out, "{value}").map_err(|e| invalid(e.to_string())),
    }
}

fn field_check(
    cli: &Cli,
    out: &mut dyn Write,
    l: &ExtensionField,
    a: &FqSubspace,
    b: &FqSubspace,
) -> Result<(), CliFailure> {
    let mut verdict = decide_linear(l, a, b).map_err(CliFailure::from)?;
    let matchable = matches!(verdict.outcome, LinearOutcome::Matchable);
    let mut crossed: Vec<&str> = Vec::new();
    if cli.xcheck {
        match criterion_verdict(l, a, b) {
            Ok(hit) => {
                if hit.is_some() == matchable {
                    return Err(CliFailure::new(
                        EXIT_INCONSISTENT,
                        format!("criterion disagrees on A = {a}, B = {b}"),
                    ));
                }
                crossed.push("criterion_verdict");
            }
            // bounds exceeded, or 1 in B where the criterion does not apply
            Err(CoreError::InvalidInput(_)) | Err(CoreError::PreconditionViolated(_)) => {}
            Err(e) => return Err(core_failure(e)),
        }
        match definitional_oracle(l, a, b) {
            Ok(result) => {
                if result.is_some() != matchable {
                    return Err(CliFailure::new(
                        EXIT_INCONSISTENT,
                        format!("definitional oracle disagrees on A = {a}, B = {b}"),
                    ));
                }
                verdict.basis_witnesses = result;
                crossed.push("definitional_oracle");
            }
            Err(CoreError::InvalidInput(_)) => {}
            Err(e) => return Err(core_failure(e)),
        }
    }
    let value = field_verdict_json(l, a, b, &verdict, &crossed);
    match cli.format.unwrap_or(OutputFormat::Json) {
        OutputFormat::Table => {
            writeln!(out, "setting=field field={l} matchable={matchable}")
                .map_err(|e| invalid(e.to_string()))?;
            if let LinearOutcome::Unmatchable(c) = &verdict.outcome {
                writeln!(
                    out,
                    "certificate: R={} S={} Y={} Z={} d={}",
                    c.r, c.s, c.y, c.z, c.d
                )
                .map_err(|e| invalid(e.to_string()))?;
            }
            Ok(())
        }
        _ => writeln!(out, "{value}").map_err(|e| invalid(e.to_string())),
    }
}

fn group_construct(
    cli: &Cli,
    out: &mut dyn Write,
    g: &FiniteAbelianGroup,
    n: usize,
) -> Result<(), CliFailure> {
    let (a, b, cert) = construct_unmatchable_group(g, n).map_err(CliFailure::from)?;
    let verified = verify_certificate(&cert, g, &a, &b);
    let value = json!({
        "setting": "group",
        "group": g.invariant_factors(),
        "n": n,
        "A": group_set_json(g, &a),
        "B": group_set_json(g, &b),
        "certificate": group_certificate_json(g, &cert),
        "verified": verified,
    });
    match cli.format.unwrap_or(OutputFormat::Json) {
        OutputFormat::Table => writeln!(out, "A={a} B={b} verified={verified}"),
        _ => writeln!(out, "{value}"),
    }
    .map_err(|e| invalid(e.to_string()))
}

fn field_construct(
    cli: &Cli,
    out: &mut dyn Write,
    l: &ExtensionField,
    n: usize,
) -> Result<(), CliFailure> {
    let (a, b, cert) = construct_unmatchable_linear(l, n).map_err(CliFailure::from)?;
    let verified = verify_linear_certificate(&cert, l, &a, &b);
    let value = json!({
        "setting": "field",
        "field": {"p": l.p(), "m": l.degree(), "modulus": l.modulus()},
        "n": n,
        "A": subspace_json(&a),
        "B": subspace_json(&b),
        "certificate": linear_certificate_json(&cert),
        "verified": verified,
    });
    match cli.format.unwrap_or(OutputFormat::Json) {
        OutputFormat::Table => writeln!(out, "A={a} B={b} verified={verified}"),
        _ => writeln!(out, "{value}"),
    }
    .map_err(|e| invalid(e.to_string()))
}
