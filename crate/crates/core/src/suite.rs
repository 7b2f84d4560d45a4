//! Named checks with their degree ranges and report anchors.

use std::path::PathBuf;
use std::time::Instant;

use serde_json::json;

use crate::characters::two_layer_minus_two_classification;
use crate::cliques::{clique_for, hook_split_inequality_check, verify_clique_character_nonvanishing};
use crate::ekrverify::{
    build_standard_basis, enumerate_max_independent_sets, reconstruct_from_blocks, transfer_strict_ekr_check,
    verify_abar_reduction, verify_m_fullrank, verify_standard_module_membership, verify_x_bound,
};
use crate::error::{Error, Result};
use crate::permgroup::{GroupKind, GroupTable};
use crate::report::CheckReport;
use crate::scheme::{clique_coclique_check, graph_spectrum, ratio_bound_is_tight, spectrum_charpoly_crosscheck};

#[derive(Clone, Debug, Default)]
pub struct SuiteConfig {
    pub cache_dir: Option<PathBuf>,
    /// Allow long-running checks such as enumeration at `n = 6`.
    pub long: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Check {
    CliqueChars,
    Coclique,
    Basis,
    Abar,
    RankM,
    XBound,
    Reconstruct,
    Enumerate,
    Transfer,
    TwoLayer,
    Spectrum,
}

impl Check {
    pub const ALL: [Check; 11] = [
        Check::Spectrum,
        Check::TwoLayer,
        Check::CliqueChars,
        Check::Coclique,
        Check::Basis,
        Check::Abar,
        Check::RankM,
        Check::XBound,
        Check::Reconstruct,
        Check::Enumerate,
        Check::Transfer,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::CliqueChars => "clique-chars",
            Check::Coclique => "coclique",
            Check::Basis => "basis",
            Check::Abar => "abar",
            Check::RankM => "rank-m",
            Check::XBound => "x-bound",
            Check::Reconstruct => "reconstruct",
            Check::Enumerate => "enumerate",
            Check::Transfer => "transfer",
            Check::TwoLayer => "two-layer",
            Check::Spectrum => "spectrum",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Check::ALL.into_iter().find(|c| c.name() == name)
    }

    pub fn anchor(self) -> &'static str {
        match self {
            Check::CliqueChars => "cliques:character-sums",
            Check::Coclique => "clique-coclique:equality",
            Check::Basis => "standard-module:basis",
            Check::Abar => "main-proof:column-space",
            Check::RankM => "main-proof:rank-M",
            Check::XBound => "main-proof:pair-graph-bound",
            Check::Reconstruct => "main-proof:reconstruction",
            Check::Enumerate => "ekr:enumeration",
            Check::Transfer => "transfer:counting-identity",
            Check::TwoLayer => "two-layer-hooks:classification",
            Check::Spectrum => "derangement-graph:spectrum",
        }
    }

    pub fn supports(self, n: usize) -> bool {
        match self {
            Check::CliqueChars => {
                (n % 2 == 1 && (5..=11).contains(&n)) || (n.is_multiple_of(2) && (6..=10).contains(&n))
            }
            Check::Coclique => (5..=8).contains(&n),
            Check::Basis | Check::Abar | Check::Reconstruct => (4..=7).contains(&n),
            Check::RankM | Check::Transfer => (5..=7).contains(&n),
            Check::XBound => (5..=8).contains(&n),
            Check::Enumerate => (5..=6).contains(&n),
            Check::TwoLayer => n.is_multiple_of(2) && (8..=14).contains(&n),
            Check::Spectrum => (4..=9).contains(&n),
        }
    }

    pub fn range_text(self) -> &'static str {
        match self {
            Check::CliqueChars => "5 <= n <= 11 (even n <= 10)",
            Check::Coclique => "5 <= n <= 8",
            Check::Basis | Check::Abar | Check::Reconstruct => "4 <= n <= 7",
            Check::RankM | Check::Transfer => "5 <= n <= 7",
            Check::XBound => "5 <= n <= 8",
            Check::Enumerate => "n = 5, or n = 6 with --long",
            Check::TwoLayer => "even n with 8 <= n <= 14",
            Check::Spectrum => "4 <= n <= 9",
        }
    }

    /// Runs the check. Failed invariants become failing reports; domain and
    /// resource errors are returned.
    pub fn run(self, n: usize, config: &SuiteConfig) -> Result<Vec<CheckReport>> {
        if !self.supports(n) {
            return Err(Error::domain(format!("{} needs {}", self.name(), self.range_text())));
        }
        match self {
            Check::CliqueChars => {
                let mut reports = vec![timed(self.name(), n, self.anchor(), || clique_chars(n, config))?];
                if n % 2 == 1 {
                    reports.push(timed("hook-split", n, "cliques:split-hook", || {
                        let r = hook_split_inequality_check(n)?;
                        Ok((r.passed(), json!(r), Vec::new()))
                    })?);
                }
                Ok(reports)
            }
            Check::Basis => {
                let mut reports = vec![timed(self.name(), n, self.anchor(), || {
                    let r = build_standard_basis(n)?.verify()?;
                    Ok((true, json!(r), Vec::new()))
                })?];
                if n <= 6 {
                    reports.push(timed("membership", n, "standard-module:membership", || {
                        let table = GroupTable::new(n, GroupKind::Alt)?;
                        let witnesses = [(1, 1), (2, 3)]
                            .into_iter()
                            .map(|(i, j)| {
                                let r = verify_standard_module_membership(&table.coset_family(i, j).members)?;
                                Ok(json!({ "coset": [i, j], "supported_on": r.supported_on }))
                            })
                            .collect::<Result<Vec<_>>>()?;
                        Ok((true, json!(witnesses), Vec::new()))
                    })?);
                }
                Ok(reports)
            }
            _ => Ok(vec![timed(self.name(), n, self.anchor(), || {
                self.run_single(n, config)
            })?]),
        }
    }

    fn run_single(self, n: usize, config: &SuiteConfig) -> Result<Outcome> {
        match self {
            Check::Coclique => {
                let clique = clique_for(n, config.cache_dir.as_deref())?;
                let table = GroupTable::new(n, GroupKind::Alt)?;
                let r = clique_coclique_check(&clique.members, &table.coset_family(1, 1).members, n)?;
                Ok((r.passed(), json!(r), Vec::new()))
            }
            Check::Abar => {
                let r = verify_abar_reduction(n)?;
                Ok((true, json!(r), Vec::new()))
            }
            Check::RankM => {
                let r = verify_m_fullrank(n)?;
                Ok((true, json!(r), Vec::new()))
            }
            Check::XBound => {
                let r = verify_x_bound(n)?;
                Ok((true, json!(r), Vec::new()))
            }
            Check::Reconstruct => reconstruct_cosets(n),
            Check::Enumerate => {
                let (r, sets) = enumerate_max_independent_sets(n, config.long)?;
                let mut notes = Vec::new();
                if !r.complete {
                    notes.push("node budget exhausted; the result is partial".to_string());
                }
                let labels = sets
                    .iter()
                    .map(|s| reconstruct_from_blocks(s).map(|rec| rec.coset))
                    .collect::<Result<Vec<_>>>()?;
                Ok((r.passed(), json!({ "enumeration": r, "reconstructed": labels }), notes))
            }
            Check::Transfer => {
                let r = transfer_strict_ekr_check(n)?;
                Ok((true, json!(r), Vec::new()))
            }
            Check::TwoLayer => {
                let r = two_layer_minus_two_classification(n)?;
                Ok((r.passed(), json!(r), Vec::new()))
            }
            Check::Spectrum => {
                let s = graph_spectrum(n)?;
                let charpoly = n <= 6;
                if charpoly {
                    spectrum_charpoly_crosscheck(n)?;
                }
                let tight = ratio_bound_is_tight(&s);
                let witnesses = json!({
                    "spectrum": s.to_string(),
                    "least": s.least().to_string(),
                    "ratio_bound": s.ratio_bound().to_string(),
                    "ratio_bound_tight": tight,
                    "characteristic_polynomial_checked": charpoly,
                });
                Ok((tight, witnesses, Vec::new()))
            }
            Check::CliqueChars | Check::Basis => unreachable!("handled in run"),
        }
    }
}

type Outcome = (bool, serde_json::Value, Vec<String>);

fn timed(check: &str, n: usize, anchor: &str, f: impl FnOnce() -> Result<Outcome>) -> Result<CheckReport> {
    let start = Instant::now();
    let report = match f() {
        Ok((passed, witnesses, notes)) => CheckReport::new(check, n, anchor, passed, witnesses)?.with_notes(notes),
        Err(e @ Error::Verification { .. }) => CheckReport::from_error(check, n, anchor, &e),
        Err(e) => return Err(e),
    };
    Ok(report.with_elapsed(start.elapsed()))
}

fn clique_chars(n: usize, config: &SuiteConfig) -> Result<Outcome> {
    let clique = clique_for(n, config.cache_dir.as_deref())?;
    clique.validate()?;
    let r = verify_clique_character_nonvanishing(&clique)?;
    let witnesses = json!({
        "kind": clique.kind,
        "provenance": clique.provenance,
        "members": clique.members.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "split_tallies": r.split_tallies,
        "standard_sum": r.standard_sum,
        "vanishing": r.vanishing,
        "sums": r.sums,
    });
    Ok((r.passed(), witnesses, r.notes.clone()))
}

/// Every coset `S_{i,j}` up to `n = 6`; the diagonal and one off-diagonal
/// row at `n = 7`.
fn reconstruct_cosets(n: usize) -> Result<Outcome> {
    let table = GroupTable::new(n, GroupKind::Alt)?;
    let labels: Vec<(usize, usize)> = if n <= 6 {
        (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect()
    } else {
        (1..=n).map(|i| (i, i)).chain((2..=n).map(|j| (1, j))).collect()
    };
    let mut witnesses = Vec::new();
    for (i, j) in labels {
        let r = reconstruct_from_blocks(&table.coset_family(i, j).members)?;
        if r.coset != (i, j) {
            return Err(Error::verification(
                "reconstructed label",
                format!("S_{{{i},{j}}} reconstructed as {:?}", r.coset),
            ));
        }
        witnesses
            .push(json!({ "coset": [i, j], "translation": r.translation.to_string(), "fixed_point": r.fixed_point }));
    }
    Ok((true, json!(witnesses), Vec::new()))
}

/// Checks supporting `n`, in suite order. Enumeration at `n = 6` is
/// included only when `long` is set.
pub fn checks_for(n: usize, config: &SuiteConfig) -> Vec<Check> {
    Check::ALL
        .into_iter()
        .filter(|c| c.supports(n) && !(*c == Check::Enumerate && n == 6 && !config.long))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for c in Check::ALL {
            assert_eq!(Check::from_name(c.name()), Some(c));
        }
        assert_eq!(Check::from_name("all"), None);
    }

    #[test]
    fn out_of_range_is_a_domain_error() {
        let err = Check::XBound.run(12, &SuiteConfig::default()).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
        assert!(checks_for(6, &SuiteConfig::default())
            .iter()
            .all(|c| *c != Check::Enumerate));
    }

    #[test]
    fn abar_report_passes_at_five() {
        let reports = Check::Abar.run(5, &SuiteConfig::default()).unwrap();
        assert_eq!(reports.len(), 1);
        assert!(reports[0].passed());
        assert_eq!(reports[0].anchor, "main-proof:column-space");
    }
}
