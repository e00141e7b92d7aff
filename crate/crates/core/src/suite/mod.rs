//! The verification battery: small exhaustive or sampled instances of
//! every structural claim the library implements, each compared against
//! an independently computed expectation.

mod checks;
mod docs;
mod poly_checks;

use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};

pub use docs::{ideal_doc, mathieu_doc, membership_doc, stability_doc, verify_witness_doc, WitnessCheck};

/// Instance sizes and caps. Everything that bounds work lives here.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Profile {
    pub name: String,
    pub primes: Vec<u64>,
    pub dims: Vec<usize>,
    /// Largest algebra or module (as a count of elements) scanned.
    pub element_cap: u64,
    /// Largest subspace lattice enumerated in full.
    pub subspace_cap: u64,
    /// Bound on element-pair scans such as `Y` against every `X`.
    pub work_cap: u64,
    /// Random subspaces drawn when a lattice is too large to enumerate.
    pub subspace_samples: usize,
    /// Random (module, subspace) pairs for the maximal-submodule check.
    pub module_pairs: usize,
    /// Random module maps for the pullback check.
    pub hom_samples: usize,
    /// Random evaluation configurations and polynomials per configuration.
    pub poly_configs: usize,
    pub poly_samples: usize,
    pub poly_degree: u32,
    /// Random cases per integral check.
    pub integral_samples: usize,
    pub seed: u64,
}

impl Default for Profile {
    fn default() -> Self {
        Profile {
            name: "default".into(),
            primes: vec![2, 3, 5, 7],
            dims: vec![2, 3],
            element_cap: 1 << 20,
            subspace_cap: 1 << 14,
            work_cap: 1 << 22,
            subspace_samples: 500,
            module_pairs: 1000,
            hom_samples: 100,
            poly_configs: 200,
            poly_samples: 50,
            poly_degree: 8,
            integral_samples: 100,
            seed: 0x5eed,
        }
    }
}

impl Profile {
    /// Built-in profiles: `default`, `quick` (for CI) and `empty`.
    pub fn named(name: &str) -> Result<Profile> {
        match name {
            "default" => Ok(Profile::default()),
            "quick" => Ok(Profile {
                name: "quick".into(),
                primes: vec![2, 3],
                dims: vec![2],
                element_cap: 1 << 12,
                subspace_cap: 1 << 10,
                work_cap: 1 << 14,
                subspace_samples: 40,
                module_pairs: 60,
                hom_samples: 20,
                poly_configs: 20,
                poly_samples: 10,
                poly_degree: 6,
                integral_samples: 20,
                seed: 0x5eed,
            }),
            "empty" => Ok(Profile {
                name: "empty".into(),
                primes: vec![],
                dims: vec![],
                module_pairs: 0,
                hom_samples: 0,
                poly_configs: 0,
                integral_samples: 0,
                ..Profile::default()
            }),
            other => Err(Error::Invalid(format!("unknown profile {other:?} (default|quick|empty, or a JSON file)"))),
        }
    }

    /// Missing keys take their `default` values.
    pub fn from_json(v: &Value) -> Result<Profile> {
        let p: Profile = serde_json::from_value(v.clone()).map_err(|e| Error::Invalid(format!("bad profile: {e}")))?;
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for &p in &self.primes {
            crate::exactfield::PrimeField::new(p)?;
        }
        if self.dims.contains(&0) {
            return Err(Error::Invalid("matrix sizes must be positive".into()));
        }
        Ok(())
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.primes.is_empty() && self.dims.is_empty() && self.module_pairs == 0 && self.hom_samples == 0 && self.poly_configs == 0 && self.integral_samples == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One line of the report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Entry {
    /// Which claim is checked, e.g. `trace-hyperplane-sets`.
    pub id: String,
    /// The claim, in a sentence.
    pub claim: String,
    pub instance: String,
    pub expected: Value,
    pub computed: Value,
    pub status: Status,
    /// Sizes of what was scanned.
    #[serde(skip_serializing_if = "Value::is_null")]
    pub stats: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub runtime_ms: u64,
}

impl Entry {
    pub(crate) fn new(id: &str, claim: &str, instance: impl Into<String>) -> Entry {
        Entry {
            id: id.into(),
            claim: claim.into(),
            instance: instance.into(),
            expected: Value::Null,
            computed: Value::Null,
            status: Status::Pass,
            stats: Value::Null,
            witness: None,
            note: None,
            runtime_ms: 0,
        }
    }

    /// Pass iff `computed == expected`.
    pub(crate) fn compare(mut self, expected: Value, computed: Value) -> Entry {
        self.status = if expected == computed { Status::Pass } else { Status::Fail };
        self.expected = expected;
        self.computed = computed;
        self
    }

    pub(crate) fn stats(mut self, stats: Value) -> Entry {
        self.stats = stats;
        self
    }

    pub(crate) fn witness(mut self, w: Option<Value>) -> Entry {
        self.witness = w;
        self
    }

    pub(crate) fn skipped(mut self, why: impl Into<String>) -> Entry {
        self.status = Status::Skipped;
        self.note = Some(why.into());
        self
    }

    pub(crate) fn errored(mut self, e: Error) -> Entry {
        self.status = Status::Fail;
        self.note = Some(format!("error: {e}"));
        self
    }
}

pub(crate) type Task = Box<dyn FnOnce() -> Entry + Send>;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub profile: String,
    pub entries: Vec<Entry>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.status != Status::Fail)
    }

    pub fn count(&self, s: Status) -> usize {
        self.entries.iter().filter(|e| e.status == s).count()
    }

    /// The JSON report. Without timing the output depends only on the
    /// profile.
    pub fn to_json(&self, timing: bool) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|e| {
                let mut v = serde_json::to_value(e).expect("entries serialize");
                if !timing {
                    v.as_object_mut().expect("object").remove("runtime_ms");
                }
                v
            })
            .collect();
        json!({
            "profile": self.profile,
            "status": if self.passed() { "pass" } else { "fail" },
            "counts": {
                "pass": self.count(Status::Pass),
                "fail": self.count(Status::Fail),
                "skipped": self.count(Status::Skipped),
            },
            "entries": entries,
        })
    }

    pub fn to_text(&self, timing: bool) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let tag = match e.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            out.push_str(&format!("{tag} {:<34} {}", e.id, e.instance));
            if timing {
                out.push_str(&format!(" ({} ms)", e.runtime_ms));
            }
            if let Some(n) = &e.note {
                out.push_str(&format!(" [{n}]"));
            }
            out.push('\n');
            if e.status == Status::Fail {
                out.push_str(&format!("     expected {}\n     computed {}\n", e.expected, e.computed));
            }
        }
        out.push_str(&format!(
            "{}: {} passed, {} failed, {} skipped\n",
            if self.passed() { "PASS" } else { "FAIL" },
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skipped)
        ));
        out
    }
}

/// Every task of the battery, in report order.
fn tasks(profile: &Profile) -> Vec<Task> {
    if profile.is_empty() {
        return Vec::new();
    }
    let mut t = Vec::new();
    t.extend(checks::oracle_agreement(profile));
    t.extend(checks::standard_module_sets(profile));
    t.extend(checks::trace_hyperplane_sets(profile));
    t.extend(checks::codimension_one(profile));
    t.extend(checks::max_submodule(profile));
    t.extend(checks::quasi_stable_classification(profile));
    t.extend(checks::stable_classification(profile));
    t.extend(checks::product_algebra_reduction(profile));
    t.extend(poly_checks::evaluation_identities(profile));
    t.extend(poly_checks::integral_battery(profile));
    t.extend(checks::pullbacks(profile));
    t.extend(checks::quotient_modules(profile));
    t.extend(checks::algebra_surjections(profile));
    t.extend(checks::division_algebras(profile));
    t
}

fn timed(task: Task) -> Entry {
    let start = Instant::now();
    let mut e = task();
    e.runtime_ms = start.elapsed().as_millis() as u64;
    e
}

/// Runs the battery. Entries are independent and run on the thread pool
/// when the `parallel` feature is on; order is fixed by the task list.
pub fn run_suite(profile: &Profile) -> Result<VerificationReport> {
    profile.validate()?;
    let tasks = tasks(profile);
    #[cfg(feature = "parallel")]
    let entries = {
        use rayon::prelude::*;
        tasks.into_par_iter().map(timed).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let entries = tasks.into_iter().map(timed).collect();
    Ok(VerificationReport { profile: profile.name.clone(), entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_profile_passes_with_no_entries() {
        let r = run_suite(&Profile::named("empty").unwrap()).unwrap();
        assert!(r.entries.is_empty() && r.passed());
        assert_eq!(r.to_json(false)["status"], "pass");
    }

    #[test]
    fn profile_json_defaults_and_rejections() {
        let p = Profile::from_json(&json!({"name": "tiny", "primes": [2]})).unwrap();
        assert_eq!(p.dims, Profile::default().dims);
        assert!(Profile::from_json(&json!({"primes": [4]})).is_err());
        assert!(Profile::from_json(&json!({"prime": [2]})).is_err());
        assert!(Profile::named("huge").is_err());
    }

    #[test]
    fn quick_profile_passes_and_is_deterministic() {
        let p = Profile::named("quick").unwrap();
        let a = run_suite(&p).unwrap();
        let failures: Vec<_> = a.entries.iter().filter(|e| e.status == Status::Fail).collect();
        assert!(failures.is_empty(), "{failures:#?}");
        let b = run_suite(&p).unwrap();
        assert_eq!(a.to_json(false).to_string(), b.to_json(false).to_string());
    }

    #[test]
    fn failing_entry_fails_the_report() {
        let e = Entry::new("x", "y", "z").compare(json!(1), json!(2));
        let r = VerificationReport { profile: "t".into(), entries: vec![e] };
        assert!(!r.passed());
        assert!(r.to_text(false).contains("FAIL"));
    }
}
