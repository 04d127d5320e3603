use std::path::Path;

use clap::{Args, Subcommand};
use hopf_galois::algebra::{
    b_symmetric_dimension, build_b_symmetric_truncation, build_group_algebra, build_truncated_poly,
    build_twisted_group_algebra,
};
use hopf_galois::descriptor::{AlgebraDescriptor, MAX_DESCRIPTOR_DIM};
use hopf_galois::factor::CommutationFactor;
use hopf_galois::group::GradingGroup;
use hopf_galois::scalar::parse_scalar;

use crate::error::CliError;

#[derive(Debug, Clone, Args)]
pub struct FactorArgs {
    /// Number of generators N.
    #[arg(long)]
    pub rank: usize,
    /// Symmetric integer matrix, rows separated by ';', entries by ','.
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<String>,
    /// Antisymmetric integer matrix in the same format as --sigma.
    #[arg(long, allow_hyphen_values = true)]
    pub omega: Option<String>,
    /// Deformation parameter in the scalar grammar, e.g. `zeta(4)`.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub q: String,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Builder {
    /// Twisted group algebra of Z_n^N.
    TwistedGroupAlgebra {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        factor: FactorArgs,
    },
    /// k[x]/(x^m) graded by Z_m.
    TruncatedPoly {
        #[arg(long)]
        m: u64,
    },
    /// The group algebra kG graded over itself, G = Z_{n_1} x ... x Z_{n_k}.
    GroupAlgebra {
        /// Cyclic orders, comma separated; empty for the trivial group.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        torsion: Vec<u64>,
    },
    /// Free b-commutative algebra truncated above a total degree.
    BSymmetric {
        /// Cyclic grading Z_n^N; the free group Z^N when absent.
        #[arg(long)]
        n: Option<u64>,
        #[command(flatten)]
        factor: FactorArgs,
        #[arg(long)]
        max_degree: u64,
    },
}

fn parse_matrix(text: Option<&str>, rank: usize, what: &str) -> Result<Vec<Vec<i64>>, CliError> {
    let Some(text) = text else {
        return Ok(vec![vec![0; rank]; rank]);
    };
    let rows = text
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|x| x.trim().parse::<i64>())
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Input(format!("--{what}: {e}")))?;
    if rows.len() != rank || rows.iter().any(|r| r.len() != rank) {
        return Err(CliError::Input(format!("--{what} must be a {rank}x{rank} matrix")));
    }
    Ok(rows)
}

fn factor_on(group: &std::sync::Arc<GradingGroup>, args: &FactorArgs) -> Result<CommutationFactor, CliError> {
    let sigma = parse_matrix(args.sigma.as_deref(), args.rank, "sigma")?;
    let omega = parse_matrix(args.omega.as_deref(), args.rank, "omega")?;
    let q = parse_scalar(&args.q).map_err(|e| CliError::Input(format!("--q: {e}")))?;
    Ok(CommutationFactor::standard(group, sigma, omega, q)?)
}

fn too_large(dim: u128) -> Result<(), CliError> {
    if dim > MAX_DESCRIPTOR_DIM as u128 {
        return Err(CliError::Cap(format!(
            "the algebra would have dimension above the descriptor limit {MAX_DESCRIPTOR_DIM}"
        )));
    }
    Ok(())
}

/// The descriptor for a builder invocation.
pub fn describe(builder: &Builder) -> Result<AlgebraDescriptor, CliError> {
    match builder {
        Builder::TwistedGroupAlgebra { n, factor } => {
            let group = GradingGroup::cyclic_power(*n, factor.rank).map_err(hopf_galois::Error::from)?;
            too_large(group.order().map_or(u128::MAX, u128::from))?;
            let b = factor_on(&group, factor)?;
            let algebra = build_twisted_group_algebra(&b)?;
            let name = format!("twisted group algebra of {group}");
            Ok(AlgebraDescriptor::from_algebra(&algebra, Some(&b), Some(name)))
        }
        Builder::TruncatedPoly { m } => {
            too_large((*m).into())?;
            let algebra = build_truncated_poly(*m)?;
            Ok(AlgebraDescriptor::from_algebra(&algebra, None, Some(format!("k[x]/(x^{m})"))))
        }
        Builder::GroupAlgebra { torsion } => {
            let group = GradingGroup::new(0, torsion.clone()).map_err(hopf_galois::Error::from)?;
            too_large(group.order().map_or(u128::MAX, u128::from))?;
            let algebra = build_group_algebra(&group)?;
            Ok(AlgebraDescriptor::from_algebra(&algebra, None, Some(format!("group algebra of {group}"))))
        }
        Builder::BSymmetric { n, factor, max_degree } => {
            let group = match n {
                Some(n) => GradingGroup::cyclic_power(*n, factor.rank).map_err(hopf_galois::Error::from)?,
                None => GradingGroup::free(factor.rank),
            };
            let b = factor_on(&group, factor)?;
            too_large(b_symmetric_dimension(&b, *max_degree))?;
            let algebra = build_b_symmetric_truncation(&b, *max_degree)?;
            let name = format!("b-symmetric algebra over {group} up to degree {max_degree}");
            Ok(AlgebraDescriptor::from_algebra(&algebra, Some(&b), Some(name)))
        }
    }
}

pub fn run(builder: &Builder, output: Option<&Path>) -> Result<bool, CliError> {
    let text = describe(builder)?.to_json();
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Other(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(true)
}
