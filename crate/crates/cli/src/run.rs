//! Command dispatch: resolve the spec, delegate to the library, assemble
//! the report.

use coarse_core::{
    cert_compose, cert_diagonal, cert_inverse, cert_union, check_pseudometric_axioms, compose,
    defeat_lattice, defeat_product, envelope, envelope_soundness_check, invert, properness_check,
    strongly_generates_check, unite, verify_certificate, BoundCertificate, CheckOptions,
    CoarseError, Entourage, Window,
};

use crate::report::{ReportDocument, ReportItem};
use crate::spec::{Binding, DefeatParams, Resolved, SpecDocument};
use crate::CliError;

/// The six subcommands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Verify,
    Axioms,
    Envelope,
    Proper,
    Defeat,
    Generates,
}

impl CommandKind {
    pub fn name(&self) -> &'static str {
        match self {
            CommandKind::Verify => "verify",
            CommandKind::Axioms => "axioms",
            CommandKind::Envelope => "envelope",
            CommandKind::Proper => "proper",
            CommandKind::Defeat => "defeat",
            CommandKind::Generates => "generates",
        }
    }
}

pub struct RunInputs {
    pub spec: SpecDocument,
    pub spec_hash: String,
    pub window_override: Option<Window>,
    pub options: CheckOptions,
}

fn core(e: CoarseError) -> CliError {
    match e {
        CoarseError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
        other => CliError::Internal(other.to_string()),
    }
}

fn missing_params(kind: CommandKind) -> CliError {
    CliError::Validation(format!(
        "spec document carries no parameters for the `{}` command",
        kind.name()
    ))
}

pub fn run(kind: CommandKind, inputs: &RunInputs) -> Result<ReportDocument, CliError> {
    let resolved = inputs.spec.resolve(inputs.window_override.clone())?;
    let items = match kind {
        CommandKind::Verify => run_verify(&inputs.spec, &resolved, &inputs.options)?,
        CommandKind::Axioms => run_axioms(&inputs.spec, &resolved, &inputs.options)?,
        CommandKind::Envelope => run_envelope(&inputs.spec, &resolved, &inputs.options)?,
        CommandKind::Proper => run_proper(&inputs.spec, &resolved, &inputs.options)?,
        CommandKind::Defeat => run_defeat(&inputs.spec, &resolved, &inputs.options)?,
        CommandKind::Generates => run_generates(&inputs.spec, &resolved, &inputs.options)?,
    };
    Ok(ReportDocument::new(
        kind.name(),
        inputs.spec_hash.clone(),
        inputs.options.budget.limit(),
        items,
    ))
}

fn lookup_entourage<'a>(resolved: &'a Resolved, name: &str) -> Result<&'a Entourage, CliError> {
    resolved
        .entourages
        .get(name)
        .ok_or_else(|| CliError::Validation(format!("entourage name `{name}` does not resolve")))
}

fn lookup_certificate<'a>(
    resolved: &'a Resolved,
    name: &str,
) -> Result<&'a BoundCertificate, CliError> {
    resolved
        .certificates
        .get(name)
        .ok_or_else(|| CliError::Validation(format!("certificate name `{name}` does not resolve")))
}

fn resolve_bindings(
    resolved: &Resolved,
    bindings: &[Binding],
) -> Result<Vec<(Entourage, BoundCertificate)>, CliError> {
    bindings
        .iter()
        .map(|b| {
            Ok((
                lookup_entourage(resolved, &b.entourage)?.clone(),
                lookup_certificate(resolved, &b.certificate)?.clone(),
            ))
        })
        .collect()
}

fn run_verify(
    spec: &SpecDocument,
    resolved: &Resolved,
    options: &CheckOptions,
) -> Result<Vec<ReportItem>, CliError> {
    let params = spec
        .commands
        .verify
        .as_ref()
        .ok_or_else(|| missing_params(CommandKind::Verify))?;
    let e = lookup_entourage(resolved, &params.entourage)?;
    let c = lookup_certificate(resolved, &params.certificate)?;
    let report = verify_certificate(e, c, &resolved.family, &resolved.window, options)
        .map_err(core)?;
    Ok(vec![ReportItem::Check {
        label: format!("{} satisfies {}", params.entourage, params.certificate),
        report,
    }])
}

fn run_axioms(
    spec: &SpecDocument,
    resolved: &Resolved,
    options: &CheckOptions,
) -> Result<Vec<ReportItem>, CliError> {
    spec.commands
        .axioms
        .as_ref()
        .ok_or_else(|| missing_params(CommandKind::Axioms))?;

    let mut items = Vec::new();
    for d in resolved.family.members() {
        let report = check_pseudometric_axioms(d, &resolved.window, options).map_err(core)?;
        items.push(ReportItem::Check {
            label: format!("axioms of d[{}]", d.index()),
            report,
        });
    }

    // closure suite over the certified bindings
    let bindings = resolve_bindings(resolved, &spec.certified)?;
    let labels: Vec<&str> = spec.certified.iter().map(|b| b.entourage.as_str()).collect();
    for ((e, c), label) in bindings.iter().zip(&labels) {
        let report =
            verify_certificate(e, c, &resolved.family, &resolved.window, options).map_err(core)?;
        items.push(ReportItem::Check {
            label: format!("{label} is certified"),
            report,
        });
    }
    for (i, (e1, c1)) in bindings.iter().enumerate() {
        for (j, (e2, c2)) in bindings.iter().enumerate() {
            let union = unite(vec![e1.clone(), e2.clone()]);
            let report = verify_certificate(
                &union,
                &cert_union(c1, c2),
                &resolved.family,
                &resolved.window,
                options,
            )
            .map_err(core)?;
            items.push(ReportItem::Check {
                label: format!("union({}, {}) satisfies max of bounds", labels[i], labels[j]),
                report,
            });

            let composed = compose(e1.clone(), e2.clone());
            let report = verify_certificate(
                &composed,
                &cert_compose(c1, c2),
                &resolved.family,
                &resolved.window,
                options,
            )
            .map_err(core)?;
            items.push(ReportItem::Check {
                label: format!(
                    "compose({}, {}) satisfies sum of bounds",
                    labels[i], labels[j]
                ),
                report,
            });
        }
        let report = verify_certificate(
            &invert(e1.clone()),
            &cert_inverse(c1),
            &resolved.family,
            &resolved.window,
            options,
        )
        .map_err(core)?;
        items.push(ReportItem::Check {
            label: format!("inverse({}) keeps its bounds", labels[i]),
            report,
        });
    }
    let diagonal = Entourage::diagonal_on(&resolved.window).map_err(core)?;
    let report = verify_certificate(
        &diagonal,
        &cert_diagonal(),
        &resolved.family,
        &resolved.window,
        options,
    )
    .map_err(core)?;
    items.push(ReportItem::Check {
        label: "diagonal satisfies unit bounds".to_string(),
        report,
    });
    Ok(items)
}

fn run_envelope(
    spec: &SpecDocument,
    resolved: &Resolved,
    options: &CheckOptions,
) -> Result<Vec<ReportItem>, CliError> {
    let params = spec
        .commands
        .envelope
        .as_ref()
        .ok_or_else(|| missing_params(CommandKind::Envelope))?;
    let c = lookup_certificate(resolved, &params.certificate)?;
    let env = envelope(c).map_err(core)?;
    let soundness =
        envelope_soundness_check(c, &env, &resolved.family, &resolved.window, options)
            .map_err(core)?;
    Ok(vec![
        ReportItem::Envelope {
            label: format!("envelope of {}", params.certificate),
            envelope: env,
        },
        ReportItem::Check {
            label: format!(
                "every pair satisfying {} lies in its envelope",
                params.certificate
            ),
            report: soundness,
        },
    ])
}

fn run_proper(
    spec: &SpecDocument,
    resolved: &Resolved,
    options: &CheckOptions,
) -> Result<Vec<ReportItem>, CliError> {
    let params = spec
        .commands
        .proper
        .as_ref()
        .ok_or_else(|| missing_params(CommandKind::Proper))?;
    let mut items = Vec::new();
    for base in &params.bases {
        let report =
            properness_check(&params.envelope, base, &resolved.window, options).map_err(core)?;
        items.push(ReportItem::Check {
            label: format!("section at {base} is finite and in box ∪ stripe"),
            report,
        });
    }
    Ok(items)
}

fn run_defeat(
    spec: &SpecDocument,
    resolved: &Resolved,
    options: &CheckOptions,
) -> Result<Vec<ReportItem>, CliError> {
    let params = spec
        .commands
        .defeat
        .as_ref()
        .ok_or_else(|| missing_params(CommandKind::Defeat))?;
    let report = match params {
        DefeatParams::Lattice { candidates } => {
            let candidates = resolve_bindings(resolved, candidates)?;
            defeat_lattice(&candidates, &resolved.window, options).map_err(core)?
        }
        DefeatParams::Product {
            candidates,
            dimension,
        } => {
            let certificates = candidates
                .iter()
                .map(|name| lookup_certificate(resolved, name).cloned())
                .collect::<Result<Vec<_>, _>>()?;
            defeat_product(&certificates, *dimension).map_err(core)?
        }
    };
    Ok(vec![ReportItem::Defeat { report }])
}

fn run_generates(
    spec: &SpecDocument,
    resolved: &Resolved,
    options: &CheckOptions,
) -> Result<Vec<ReportItem>, CliError> {
    let params = spec
        .commands
        .generates
        .as_ref()
        .ok_or_else(|| missing_params(CommandKind::Generates))?;
    let candidates = params
        .candidates
        .iter()
        .map(|name| lookup_entourage(resolved, name).cloned())
        .collect::<Result<Vec<_>, _>>()?;
    let probes = resolve_bindings(resolved, &params.probes)?;
    let report = strongly_generates_check(
        &candidates,
        &probes,
        &resolved.family,
        &resolved.window,
        options,
    )
    .map_err(core)?;
    Ok(vec![ReportItem::Check {
        label: "every probe is contained in some candidate".to_string(),
        report,
    }])
}
