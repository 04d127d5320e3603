use std::path::Path;

use hopf_galois::algebra::GradedAlgebra;
use hopf_galois::descriptor::{AlgebraDescriptor, Loaded};
use hopf_galois::factor::{check_cqt_axioms, check_cqt_axioms_exhaustive, CommutationFactor};
use hopf_galois::galois::{beta_n, check_equivalence_theorem};
use hopf_galois::group::{enumerate_capped, GroupElement};
use hopf_galois::hopf::{check_hopf_axioms, GroupAlgebraElement, GroupHopf};
use hopf_galois::report::AxiomReport;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::{Caps, Expect};

/// Groups up to this order get every triple in the CQT check.
const EXHAUSTIVE_CQT_ORDER: u64 = 64;
/// Skip the iterated canonical map when its ambient space is larger.
const MAX_BETA_AMBIENT: u128 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckEntry {
    pub check: &'static str,
    pub property: &'static str,
    pub status: Status,
    pub detail: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub file: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub group: String,
    pub dim: usize,
    pub expect: &'static str,
    pub checks: Vec<CheckEntry>,
    pub outcome: Status,
}

fn expect_name(e: Expect) -> &'static str {
    match e {
        Expect::Pass => "pass",
        Expect::NotStrong => "not-strong",
        Expect::NotQc => "not-qc",
    }
}

fn expected_failures(e: Expect) -> &'static [&'static str] {
    match e {
        Expect::Pass => &[],
        Expect::NotStrong => &["strong-grading", "galois"],
        Expect::NotQc => &["quantum-commutativity"],
    }
}

fn status(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn axiom_entry(check: &'static str, property: &'static str, report: &AxiomReport) -> CheckEntry {
    CheckEntry {
        check,
        property,
        status: status(report.passed()),
        detail: to_value(report),
    }
}

pub fn load(path: &Path) -> Result<Loaded, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let desc = AlgebraDescriptor::from_json(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    desc.build()
        .map_err(|e| match CliError::from(e) {
            CliError::Input(m) => CliError::Input(format!("{}: {m}", path.display())),
            other => other,
        })
}

/// Distinct grades of the basis, which always include the identity.
fn grade_sample(algebra: &GradedAlgebra) -> Vec<GroupElement> {
    let mut out: Vec<GroupElement> = algebra.components().into_keys().collect();
    out.truncate(16);
    out
}

fn hopf_entry(algebra: &GradedAlgebra, elements: Option<&[GroupElement]>) -> Result<CheckEntry, CliError> {
    let group = algebra.group();
    let sample: Vec<GroupAlgebraElement> = match elements {
        Some(all) => all.iter().map(GroupAlgebraElement::group_like).collect(),
        None => grade_sample(algebra).iter().map(GroupAlgebraElement::group_like).collect(),
    };
    let report = check_hopf_axioms(&GroupHopf::new(group), &sample)?;
    Ok(axiom_entry("hopf-axioms", "Hopf algebra axioms of kG on group-likes", &report))
}

fn cqt_entry(
    algebra: &GradedAlgebra,
    factor: &CommutationFactor,
    elements: Option<&[GroupElement]>,
) -> Result<CheckEntry, CliError> {
    let report = match elements {
        Some(all) if all.len() as u64 <= EXHAUSTIVE_CQT_ORDER => check_cqt_axioms_exhaustive(factor)?,
        _ => {
            let sample = grade_sample(algebra);
            let mut triples = Vec::new();
            for h in &sample {
                for k in &sample {
                    for l in &sample {
                        triples.push((h.clone(), k.clone(), l.clone()));
                    }
                }
            }
            check_cqt_axioms(factor, &triples)?
        }
    };
    Ok(axiom_entry(
        "cqt-axioms",
        "coquasitriangular axioms of the commutation factor",
        &report,
    ))
}

/// Runs every applicable check on a loaded descriptor.
pub fn evaluate(loaded: &Loaded, beta: u32, caps: &Caps) -> Result<Vec<CheckEntry>, CliError> {
    if beta > caps.max_beta_n {
        return Err(CliError::Cap(format!(
            "beta-n {beta} exceeds the cap {}",
            caps.max_beta_n
        )));
    }
    let algebra = &loaded.algebra;
    let group = algebra.group();
    let elements = if group.is_finite() {
        Some(enumerate_capped(group, caps.max_group_order).map_err(hopf_galois::Error::from)?)
    } else {
        None
    };
    let mut checks = vec![axiom_entry(
        "structure",
        "associativity, two-sided unit in grade e, homogeneous products",
        &algebra.structure_report(),
    )];
    checks.push(hopf_entry(algebra, elements.as_deref())?);
    if let Some(factor) = &loaded.factor {
        checks.push(cqt_entry(algebra, factor, elements.as_deref())?);
    }

    let coinvariants = algebra.coinvariants();
    let identity_dim = algebra.identity_component().len();
    checks.push(CheckEntry {
        check: "coinvariants",
        property: "coinvariants equal the identity component",
        status: status(algebra.coinvariants_equal_identity_component()),
        detail: json!({"coinvariant_dim": coinvariants.len(), "identity_component_dim": identity_dim}),
    });

    if let Some(factor) = &loaded.factor {
        let verdict = algebra.check_quantum_commutativity(factor)?;
        checks.push(CheckEntry {
            check: "quantum-commutativity",
            property: "x y = b(g, h) y x on homogeneous basis pairs",
            status: status(verdict.holds),
            detail: to_value(&verdict),
        });
    }

    let Some(elements) = elements else {
        let window = algebra.strong_grading_window()?;
        checks.push(CheckEntry {
            check: "strong-grading",
            property: "A_g A_h = A_gh for all g, h",
            status: Status::Skipped,
            detail: json!({"reason": "grading group is infinite", "window": to_value(&window)}),
        });
        return Ok(checks);
    };

    let eq = check_equivalence_theorem(algebra)?;
    checks.push(CheckEntry {
        check: "strong-grading",
        property: "A_g A_h = A_gh for all g, h",
        status: status(eq.strong.strong),
        detail: to_value(&eq.strong),
    });
    checks.push(CheckEntry {
        check: "galois",
        property: "canonical map is bijective",
        status: status(eq.galois.bijective),
        detail: to_value(&eq.galois),
    });
    checks.push(CheckEntry {
        check: "equivalence",
        property: "strongly graded iff Galois",
        status: status(eq.agree),
        detail: json!({"strong": eq.strong.strong, "galois": eq.galois.bijective}),
    });

    let order = elements.len() as u128;
    let ambient = (algebra.dim() as u128).checked_pow(beta + 1);
    let codomain = order.checked_pow(beta).and_then(|p| p.checked_mul(algebra.dim() as u128));
    match (ambient, codomain) {
        (Some(a), Some(c)) if a <= MAX_BETA_AMBIENT && c <= MAX_BETA_AMBIENT => {
            let map = beta_n(algebra, beta, caps.max_beta_n)?;
            let bijective = map.is_bijective();
            let expected_dim = c as usize;
            let dims_ok = !bijective || (map.cols() == expected_dim && map.rows() == expected_dim);
            checks.push(CheckEntry {
                check: "beta-n",
                property: "iterated canonical map is bijective exactly when the canonical map is",
                status: status(bijective == eq.galois.bijective && dims_ok),
                detail: json!({
                    "n": beta,
                    "bijective": bijective,
                    "domain_dim": map.cols(),
                    "codomain_dim": map.rows(),
                    "rank": map.rank(),
                }),
            });
        }
        _ => checks.push(CheckEntry {
            check: "beta-n",
            property: "iterated canonical map is bijective exactly when the canonical map is",
            status: Status::Skipped,
            detail: json!({"n": beta, "reason": "tensor power too large"}),
        }),
    }
    Ok(checks)
}

/// Whether the checks match the expectation: expected failures fail, and
/// nothing else does.
pub fn meets_expectation(checks: &[CheckEntry], expect: Expect) -> bool {
    let expected = expected_failures(expect);
    let others_ok = checks
        .iter()
        .filter(|c| !expected.contains(&c.check))
        .all(|c| c.status != Status::Fail);
    let expected_fail = expected
        .iter()
        .all(|name| checks.iter().any(|c| c.check == *name && c.status == Status::Fail));
    others_ok && expected_fail
}

fn print_entry(c: &CheckEntry, verbose: bool) {
    let tag = match c.status {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Skipped => "skip",
    };
    println!("{tag:5} {:22} {}", c.check, c.property);
    if verbose || c.status == Status::Fail {
        println!("      {}", c.detail);
    }
}

pub fn run(
    path: &Path,
    report: Option<&Path>,
    expect: Expect,
    beta: u32,
    caps: &Caps,
    verbose: bool,
) -> Result<bool, CliError> {
    let loaded = load(path)?;
    let checks = evaluate(&loaded, beta, caps)?;
    for c in &checks {
        print_entry(c, verbose);
    }
    let ok = meets_expectation(&checks, expect);
    println!(
        "outcome: {} (expect {})",
        if ok { "pass" } else { "fail" },
        expect_name(expect)
    );
    if let Some(out) = report {
        let rep = CheckReport {
            file: path.display().to_string(),
            name: loaded.name.clone(),
            group: loaded.algebra.group().to_string(),
            dim: loaded.algebra.dim(),
            expect: expect_name(expect),
            checks,
            outcome: status(ok),
        };
        let mut text = serde_json::to_string_pretty(&rep).expect("reports serialize");
        text.push('\n');
        std::fs::write(out, text).map_err(|e| CliError::Other(format!("{}: {e}", out.display())))?;
    }
    Ok(ok)
}
