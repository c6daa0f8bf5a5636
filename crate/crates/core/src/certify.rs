//! The subgroup harness: permutation image, entropy of elements, kernel
//! structure and the derived-length sandwich for a finitely generated
//! subgroup of a braid group, assembled into a report.
//!
//! The checked statements, for a subgroup G of B_n with induced permutation
//! group π(G):
//!
//! * if every element of G has zero entropy then G is solvable, so an
//!   unsolvable π(G) forces a positive-entropy element;
//! * for zero-entropy G the kernel of π is free abelian;
//! * for solvable zero-entropy G, `dlen(G) - 1 <= dlen(π(G)) <= dlen(G)`.
//!
//! Zero entropy of a whole group is only ever tested element-wise up to a
//! word-length budget, and reports say so.

use std::collections::HashSet;
use std::fmt::{self, Write as _};

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braid::{BraidWord, Permutation};
use crate::dynnikov::{self, BraidKey, Classification, EntropyCertificate, EntropyConfig};
use crate::error::{Error, Result};
use crate::perm_group::{DerivedLength, PermGroup, DEFAULT_CLOSURE_BOUND};

pub const REPORT_SCHEMA: &str = "braidcert.report/v1";

/// Structural promise about G that makes `dlen(G)` exactly computable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Structure {
    /// Generators are twists about disjoint curves and pairwise commute.
    DisjointTwists,
    /// A single generator.
    Cyclic,
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Structure::DisjointTwists => "DISJOINT_TWISTS",
            Structure::Cyclic => "CYCLIC",
        })
    }
}

impl std::str::FromStr for Structure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().replace('-', "_").as_str() {
            "DISJOINT_TWISTS" => Ok(Structure::DisjointTwists),
            "CYCLIC" => Ok(Structure::Cyclic),
            _ => Err(Error::InvalidSpec(format!("unknown structure tag `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedWord {
    pub name: String,
    pub word: BraidWord,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupSpec {
    n: usize,
    generators: Vec<NamedWord>,
    declared_structure: Option<Structure>,
}

#[derive(Debug, Deserialize)]
struct SpecFile {
    n: usize,
    generators: Vec<SpecFileGenerator>,
    #[serde(default)]
    structure: Option<String>,
}

#[derive(Debug, Deserialize)]
struct SpecFileGenerator {
    #[serde(default)]
    name: Option<String>,
    word: String,
}

impl SubgroupSpec {
    pub fn new(n: usize, generators: Vec<NamedWord>, declared_structure: Option<Structure>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidSpec("at least one generator is required".into()));
        }
        if n < 3 {
            return Err(Error::TooFewStrands { min: 3, got: n });
        }
        if let Some(g) = generators.iter().find(|g| g.word.n() != n) {
            return Err(Error::StrandMismatch(n, g.word.n()));
        }
        Ok(Self { n, generators, declared_structure })
    }

    /// Generators named `g1, g2, ...`.
    pub fn from_words(n: usize, words: Vec<BraidWord>, declared_structure: Option<Structure>) -> Result<Self> {
        let generators = words
            .into_iter()
            .enumerate()
            .map(|(i, word)| NamedWord { name: format!("g{}", i + 1), word })
            .collect();
        Self::new(n, generators, declared_structure)
    }

    /// Parses generator words in braid text format.
    pub fn parse(n: usize, words: &[&str], declared_structure: Option<Structure>) -> Result<Self> {
        let words = words.iter().map(|w| BraidWord::parse(w, n)).collect::<Result<Vec<_>>>()?;
        Self::from_words(n, words, declared_structure)
    }

    /// `{n, generators: [{name, word}], structure?}`
    pub fn from_json(text: &str) -> Result<Self> {
        let file: SpecFile = serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))?;
        if file.n < 2 {
            return Err(Error::TooFewStrands { min: 2, got: file.n });
        }
        let generators = file
            .generators
            .into_iter()
            .enumerate()
            .map(|(i, g)| {
                Ok(NamedWord {
                    name: g.name.unwrap_or_else(|| format!("g{}", i + 1)),
                    word: BraidWord::parse(&g.word, file.n)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let structure = file.structure.as_deref().map(str::parse).transpose()?;
        Self::new(file.n, generators, structure)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[NamedWord] {
        &self.generators
    }

    pub fn declared_structure(&self) -> Option<Structure> {
        self.declared_structure
    }

    /// The 2k symbols g1, g1⁻¹, g2, g2⁻¹, … in search order.
    fn symbols(&self) -> Vec<BraidWord> {
        self.generators
            .iter()
            .flat_map(|g| [g.word.clone(), g.word.inverse()])
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
struct SpecSummary {
    n: usize,
    generators: Vec<SpecSummaryGenerator>,
    structure: Option<Structure>,
}

#[derive(Debug, Clone, Serialize)]
struct SpecSummaryGenerator {
    name: String,
    word: String,
}

impl From<&SubgroupSpec> for SpecSummary {
    fn from(spec: &SubgroupSpec) -> Self {
        SpecSummary {
            n: spec.n,
            generators: spec
                .generators
                .iter()
                .map(|g| SpecSummaryGenerator { name: g.name.clone(), word: g.word.to_string() })
                .collect(),
            structure: spec.declared_structure,
        }
    }
}

/// Budgets for one harness run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct HarnessConfig {
    pub entropy: EntropyConfig,
    /// Longest generator word examined by the positive-entropy search.
    pub max_len: usize,
    /// Longest generator word sampled for kernel elements.
    pub kernel_len: usize,
    pub closure_bound: usize,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        Self {
            entropy: EntropyConfig::default(),
            max_len: 8,
            kernel_len: 4,
            closure_bound: DEFAULT_CLOSURE_BOUND,
        }
    }
}

impl HarnessConfig {
    pub fn validate(&self) -> Result<()> {
        self.entropy.validate()?;
        if self.max_len == 0 {
            return Err(Error::InvalidConfig("max_len must be at least 1".into()));
        }
        if self.closure_bound == 0 {
            return Err(Error::InvalidConfig("closure bound must be at least 1".into()));
        }
        Ok(())
    }
}

/// A word in the generators: `(generator index, ±1)` per symbol.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorWord(pub Vec<(usize, i32)>);

impl GeneratorWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn label(&self, spec: &SubgroupSpec) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|&(g, e)| {
                let name = &spec.generators[g].name;
                if e < 0 {
                    format!("{name}^-1")
                } else {
                    name.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn braid(&self, spec: &SubgroupSpec, symbols: &[BraidWord]) -> BraidWord {
        let letters: Vec<i32> = self
            .0
            .iter()
            .flat_map(|&(g, e)| symbols[2 * g + usize::from(e < 0)].letters().to_vec())
            .collect();
        BraidWord::new(spec.n, letters).expect("generator letters already validated")
    }
}

/// Freely reduced generator words of exactly `len` symbols, in search order.
fn reduced_words(generator_count: usize, len: usize) -> Vec<GeneratorWord> {
    let symbols: Vec<(usize, i32)> = (0..generator_count).flat_map(|g| [(g, 1), (g, -1)]).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * symbols.len());
        for prefix in &out {
            for &(g, e) in &symbols {
                if let Some(&(pg, pe)) = prefix.last() {
                    if pg == g && pe == -e {
                        continue;
                    }
                }
                let mut w = prefix.clone();
                w.push((g, e));
                next.push(w);
            }
        }
        out = next;
    }
    out.into_iter().map(GeneratorWord).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct FoundCertificate {
    pub generator_word: String,
    pub generator_length: usize,
    pub certificate: EntropyCertificate,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SearchOutcome {
    Found(FoundCertificate),
    Exhausted { max_len: usize, distinct_elements: usize },
}

impl SearchOutcome {
    pub fn certificate(&self) -> Option<&FoundCertificate> {
        match self {
            SearchOutcome::Found(c) => Some(c),
            SearchOutcome::Exhausted { .. } => None,
        }
    }
}

/// Breadth-first search for a positive-entropy element of the subgroup.
///
/// Words are visited by length, then lexicographically with each
/// generator's inverse right after it. Words equal (as braids) to one seen
/// earlier are skipped. Within a length the first rigorous certificate wins,
/// else the first positive one. A length is classified in parallel but the
/// pick depends only on search order.
pub fn find_positive_entropy(spec: &SubgroupSpec, max_len: usize, config: &EntropyConfig) -> Result<SearchOutcome> {
    if max_len == 0 {
        return Err(Error::InvalidConfig("max_len must be at least 1".into()));
    }
    config.validate()?;
    let symbols = spec.symbols();
    let mut seen: HashSet<BraidKey> = HashSet::new();
    seen.insert(dynnikov::braid_key(&BraidWord::identity(spec.n)?));
    for len in 1..=max_len {
        let candidates: Vec<(GeneratorWord, BraidWord)> = reduced_words(spec.generators.len(), len)
            .into_iter()
            .filter_map(|gw| {
                let braid = gw.braid(spec, &symbols);
                seen.insert(dynnikov::braid_key(&braid)).then_some((gw, braid))
            })
            .collect();
        let classified: Vec<Classification> = candidates
            .par_iter()
            .map(|(_, braid)| dynnikov::classify(braid, config))
            .collect::<Result<_>>()?;
        let pick = classified
            .iter()
            .position(|c| c.certificate().is_some_and(|c| c.rigorous))
            .or_else(|| classified.iter().position(|c| c.certificate().is_some()));
        if let Some(i) = pick {
            let certificate = classified[i].certificate().expect("picked a certificate").clone();
            return Ok(SearchOutcome::Found(FoundCertificate {
                generator_word: candidates[i].0.label(spec),
                generator_length: len,
                certificate,
            }));
        }
    }
    Ok(SearchOutcome::Exhausted { max_len, distinct_elements: seen.len() })
}

/// Elements of the subgroup given by words of length `<= max_len` that
/// induce the identity permutation, one word per distinct braid. The empty
/// word comes first.
pub fn kernel_words(spec: &SubgroupSpec, max_len: usize) -> Vec<BraidWord> {
    kernel_words_labeled(spec, max_len).into_iter().map(|(_, w)| w).collect()
}

fn kernel_words_labeled(spec: &SubgroupSpec, max_len: usize) -> Vec<(String, BraidWord)> {
    let symbols = spec.symbols();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for len in 0..=max_len {
        for gw in reduced_words(spec.generators.len(), len) {
            let braid = gw.braid(spec, &symbols);
            if braid.is_pure() && seen.insert(dynnikov::braid_key(&braid)) {
                out.push((gw.label(spec), braid));
            }
        }
    }
    out
}

/// Rank over ℚ of a set of integer vectors.
pub fn rational_rank(vectors: &[Vec<i64>]) -> usize {
    let mut rows: Vec<Vec<BigRational>> = vectors
        .iter()
        .map(|v| v.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pivot_row[col];
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x -= &factor * p;
            }
        }
        rank += 1;
    }
    rank
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum KernelStatus {
    Pass,
    Fail { u: String, v: String },
    NotApplicable { reason: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct KernelFindings {
    pub max_len: usize,
    /// Distinct kernel elements sampled, as braid words.
    pub words: Vec<String>,
    pub all_commute: bool,
    pub linking_rank: usize,
    #[serde(flatten)]
    pub status: KernelStatus,
}

fn hypothesis_failure(
    spec: &SubgroupSpec,
    image: &PermGroup,
    generator_findings: &[Classification],
    search: &SearchOutcome,
) -> Option<String> {
    if let Some((g, c)) = spec
        .generators
        .iter()
        .zip(generator_findings)
        .find(|(_, c)| !c.is_zero())
    {
        return Some(format!("generator {} is classified {}", g.name, c.label()));
    }
    if !image.is_solvable() {
        return Some("permutation image is not solvable".into());
    }
    search
        .certificate()
        .map(|c| format!("positive entropy found for {}", c.generator_word))
}

/// Checks that sampled kernel elements commute pairwise and reports the
/// rank of their linking matrices.
///
/// Only applicable to zero-entropy subgroups: every generator must classify
/// ZERO_ENTROPY, π(G) must be solvable and the positive-entropy search up to
/// `max_len` must come back empty.
pub fn verify_kernel_abelian(spec: &SubgroupSpec, max_len: usize, config: &HarnessConfig) -> Result<KernelFindings> {
    config.validate()?;
    let image = permutation_image(spec, config.closure_bound)?;
    let generator_findings = spec
        .generators
        .iter()
        .map(|g| dynnikov::classify(&g.word, &config.entropy))
        .collect::<Result<Vec<_>>>()?;
    let search = find_positive_entropy(spec, max_len.max(1), &config.entropy)?;
    kernel_findings(spec, max_len, &image, &generator_findings, &search)
}

fn kernel_findings(
    spec: &SubgroupSpec,
    max_len: usize,
    image: &PermGroup,
    generator_findings: &[Classification],
    search: &SearchOutcome,
) -> Result<KernelFindings> {
    let kernel = kernel_words_labeled(spec, max_len);
    let mut witness = None;
    'outer: for (i, (lu, u)) in kernel.iter().enumerate() {
        for (lv, v) in &kernel[i + 1..] {
            if !dynnikov::commute(u, v)? {
                witness = Some((lu.clone(), lv.clone()));
                break 'outer;
            }
        }
    }
    let linking: Vec<Vec<i64>> = kernel
        .iter()
        .map(|(_, w)| w.linking_matrix().map(|m| m.upper_triangle()))
        .collect::<Result<_>>()?;
    let linking_rank = rational_rank(&linking);
    let status = match (hypothesis_failure(spec, image, generator_findings, search), &witness) {
        (Some(reason), _) => KernelStatus::NotApplicable { reason },
        (None, Some((u, v))) => KernelStatus::Fail { u: u.clone(), v: v.clone() },
        (None, None) => KernelStatus::Pass,
    };
    Ok(KernelFindings {
        max_len,
        words: kernel.iter().map(|(_, w)| w.to_string()).collect(),
        all_commute: witness.is_none(),
        linking_rank,
        status,
    })
}

pub fn permutation_image(spec: &SubgroupSpec, bound: usize) -> Result<PermGroup> {
    let perms: Vec<Permutation> = spec.generators.iter().map(|g| g.word.permutation()).collect();
    PermGroup::generate(spec.n, &perms, bound)
}

#[derive(Debug, Clone, Serialize)]
pub struct PermImageSummary {
    pub order: usize,
    pub generators: Vec<String>,
    pub orbits: Vec<Vec<usize>>,
    pub derived_series_orders: Vec<usize>,
    pub solvable: bool,
    pub derived_length: DerivedLength,
}

impl From<&PermGroup> for PermImageSummary {
    fn from(g: &PermGroup) -> Self {
        let series = g.derived_series();
        PermImageSummary {
            order: g.order(),
            generators: g.generators().iter().map(ToString::to_string).collect(),
            orbits: g.orbits(),
            derived_series_orders: series.orders(),
            solvable: series.terminated,
            derived_length: series.derived_length(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SandwichStatus {
    Pass,
    Fail { details: String },
    Skipped { reason: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct SandwichCheck {
    pub dlen_group: Option<usize>,
    pub dlen_image: DerivedLength,
    #[serde(flatten)]
    pub status: SandwichStatus,
}

/// Exact `dlen(G)` from a declared structure, after checking the promise.
fn declared_dlen(spec: &SubgroupSpec, structure: Structure) -> Result<usize> {
    let nontrivial = spec.generators.iter().filter(|g| !dynnikov::is_trivial(&g.word)).count();
    match structure {
        Structure::Cyclic => {
            if spec.generators.len() != 1 {
                return Err(Error::StructureContradicted(format!(
                    "CYCLIC needs one generator, got {}",
                    spec.generators.len()
                )));
            }
        }
        Structure::DisjointTwists => {
            for (i, g) in spec.generators.iter().enumerate() {
                for h in &spec.generators[i + 1..] {
                    if !dynnikov::commute(&g.word, &h.word)? {
                        return Err(Error::StructureContradicted(format!(
                            "{} and {} do not commute",
                            g.name, h.name
                        )));
                    }
                }
            }
        }
    }
    // braid groups are torsion free: a nontrivial abelian subgroup is infinite
    Ok(usize::from(nontrivial > 0))
}

/// `dlen(G) - 1 <= dlen(π(G)) <= dlen(G)` for specs with a declared structure.
pub fn check_dlen_sandwich(spec: &SubgroupSpec, image: &PermImageSummary) -> Result<SandwichCheck> {
    let Some(structure) = spec.declared_structure else {
        return Ok(SandwichCheck {
            dlen_group: None,
            dlen_image: image.derived_length,
            status: SandwichStatus::Skipped {
                reason: "dlen(G) is only computed for declared structures".into(),
            },
        });
    };
    let dlen_group = declared_dlen(spec, structure)?;
    let status = match image.derived_length {
        DerivedLength::Solvable(d) if d <= dlen_group && d + 1 >= dlen_group => SandwichStatus::Pass,
        DerivedLength::Solvable(d) => SandwichStatus::Fail {
            details: format!("dlen(G) = {dlen_group}, dlen(image) = {d}"),
        },
        DerivedLength::Unsolvable => SandwichStatus::Fail {
            details: format!("dlen(G) = {dlen_group} but the image is not solvable"),
        },
    };
    Ok(SandwichCheck { dlen_group: Some(dlen_group), dlen_image: image.derived_length, status })
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneratorEntropy {
    pub name: String,
    pub word: String,
    #[serde(flatten)]
    pub classification: Classification,
}

#[derive(Debug, Clone, Serialize)]
pub struct EntropyFindings {
    pub generators: Vec<GeneratorEntropy>,
    pub search: SearchOutcome,
    /// Word budget of the search; group entropy is only assessed element-wise
    /// up to this length.
    pub search_max_len: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum VerdictStatus {
    Consistent,
    Violation,
}

impl fmt::Display for VerdictStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictStatus::Consistent => "CONSISTENT",
            VerdictStatus::Violation => "VIOLATION",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremVerdict {
    pub status: VerdictStatus,
    pub details: Vec<String>,
    /// Budget-limited outcomes worth a look that are not counterexamples.
    pub anomalies: Vec<String>,
    pub dlen_sandwich: SandwichCheck,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupAnalysisReport {
    schema: &'static str,
    spec: SpecSummary,
    pub perm_image: PermImageSummary,
    pub entropy: EntropyFindings,
    pub kernel: KernelFindings,
    pub verdict: TheoremVerdict,
}

impl GroupAnalysisReport {
    /// Whether the run should count as a success (exit status 0).
    pub fn is_clean(&self) -> bool {
        self.verdict.status == VerdictStatus::Consistent && self.verdict.anomalies.is_empty()
    }
}

/// Runs every check on `spec` and assembles the report.
pub fn analyze(spec: &SubgroupSpec, config: &HarnessConfig) -> Result<GroupAnalysisReport> {
    config.validate()?;
    let image = permutation_image(spec, config.closure_bound)?;
    let perm_image = PermImageSummary::from(&image);

    let classifications: Vec<Classification> = spec
        .generators
        .par_iter()
        .map(|g| dynnikov::classify(&g.word, &config.entropy))
        .collect::<Result<_>>()?;

    let search = find_positive_entropy(spec, config.max_len, &config.entropy)?;
    let kernel = kernel_findings(spec, config.kernel_len, &image, &classifications, &search)?;
    let dlen_sandwich = check_dlen_sandwich(spec, &perm_image)?;

    let mut details = Vec::new();
    let mut anomalies = Vec::new();
    match (&search, perm_image.solvable) {
        (SearchOutcome::Found(found), false) => details.push(format!(
            "image is not solvable; positive entropy certified by {} ({})",
            found.generator_word, found.certificate.word
        )),
        (SearchOutcome::Exhausted { max_len, .. }, false) => anomalies.push(format!(
            "image is not solvable but no positive-entropy word of length <= {max_len} was found"
        )),
        (SearchOutcome::Found(found), true) => details.push(format!(
            "image is solvable and {} has positive entropy; allowed, the implication runs one way",
            found.generator_word
        )),
        (SearchOutcome::Exhausted { max_len, .. }, true) => details.push(format!(
            "image is solvable; no positive entropy up to generator length {max_len}"
        )),
    }
    if let Some(found) = search.certificate() {
        if !found.certificate.is_coherent() {
            anomalies.push(format!(
                "certificate for {} is incoherent: estimate {} vs Burau bound {}",
                found.generator_word, found.certificate.dynnikov_estimate, found.certificate.burau_lower_bound
            ));
        }
    }
    let mut violation = false;
    if let KernelStatus::Fail { u, v } = &kernel.status {
        violation = true;
        details.push(format!("kernel elements {u} and {v} do not commute in a zero-entropy subgroup"));
    }
    if let SandwichStatus::Fail { details: d } = &dlen_sandwich.status {
        violation = true;
        details.push(format!("derived-length sandwich fails: {d}"));
    }

    Ok(GroupAnalysisReport {
        schema: REPORT_SCHEMA,
        spec: SpecSummary::from(spec),
        perm_image,
        entropy: EntropyFindings {
            generators: spec
                .generators
                .iter()
                .zip(classifications)
                .map(|(g, classification)| GeneratorEntropy {
                    name: g.name.clone(),
                    word: g.word.to_string(),
                    classification,
                })
                .collect(),
            search,
            search_max_len: config.max_len,
        },
        kernel,
        verdict: TheoremVerdict {
            status: if violation { VerdictStatus::Violation } else { VerdictStatus::Consistent },
            details,
            anomalies,
            dlen_sandwich,
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Text,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "text" => Ok(ReportFormat::Text),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

pub fn emit_report(report: &GroupAnalysisReport, format: &str) -> Result<String> {
    match format.parse()? {
        ReportFormat::Json => Ok(serde_json::to_string_pretty(report).expect("report serializes")),
        ReportFormat::Text => Ok(render_text(report)),
    }
}

fn status_label<T: Serialize>(status: &T) -> String {
    serde_json::to_value(status)
        .ok()
        .and_then(|v| v.get("status").and_then(|s| s.as_str()).map(str::to_string))
        .unwrap_or_default()
}

fn render_text(r: &GroupAnalysisReport) -> String {
    let mut out = String::new();
    let spec = &r.spec;
    let _ = writeln!(out, "subgroup of B_{} ({})", spec.n, spec.structure.map_or("no declared structure".into(), |s| s.to_string()));
    for g in &spec.generators {
        let _ = writeln!(out, "  {:<10} {}", g.name, g.word);
    }
    let p = &r.perm_image;
    let _ = writeln!(out, "\npermutation image");
    let _ = writeln!(out, "  {:<22} {}", "order", p.order);
    let _ = writeln!(out, "  {:<22} {:?}", "orbits", p.orbits);
    let _ = writeln!(out, "  {:<22} {:?}", "derived series orders", p.derived_series_orders);
    let _ = writeln!(out, "  {:<22} {}", "derived length", p.derived_length);

    let _ = writeln!(out, "\nentropy");
    let _ = writeln!(out, "  {:<10} {:<18} {:>10} {:>10}", "generator", "class", "estimate", "burau");
    for g in &r.entropy.generators {
        let (est, bound) = match &g.classification {
            Classification::ZeroEntropy { estimate, .. } => (*estimate, 0.0),
            Classification::PositiveEntropy(c) => (c.dynnikov_estimate, c.burau_lower_bound),
            Classification::Inconclusive { estimate, burau_lower_bound } => (*estimate, *burau_lower_bound),
        };
        let _ = writeln!(out, "  {:<10} {:<18} {:>10.6} {:>10.6}", g.name, g.classification.label(), est, bound);
    }
    match &r.entropy.search {
        SearchOutcome::Found(f) => {
            let _ = writeln!(
                out,
                "  search: {} = [{}], estimate {:.6}, Burau bound {:.6}, {}",
                f.generator_word,
                f.certificate.word,
                f.certificate.dynnikov_estimate,
                f.certificate.burau_lower_bound,
                if f.certificate.rigorous { "rigorous" } else { "heuristic" }
            );
        }
        SearchOutcome::Exhausted { max_len, distinct_elements } => {
            let _ = writeln!(out, "  search: exhausted up to length {max_len} ({distinct_elements} distinct elements)");
        }
    }

    let k = &r.kernel;
    let _ = writeln!(out, "\nkernel (words up to length {})", k.max_len);
    let _ = writeln!(out, "  {:<22} {}", "distinct elements", k.words.len());
    let _ = writeln!(out, "  {:<22} {}", "pairwise commute", k.all_commute);
    let _ = writeln!(out, "  {:<22} {}", "linking rank", k.linking_rank);
    let _ = writeln!(out, "  {:<22} {}", "status", status_label(&k.status));

    let v = &r.verdict;
    let _ = writeln!(out, "\nverdict: {}", v.status);
    let _ = writeln!(
        out,
        "  dlen sandwich: {} (dlen(G) = {}, dlen(image) = {})",
        status_label(&v.dlen_sandwich.status),
        v.dlen_sandwich.dlen_group.map_or("?".into(), |d| d.to_string()),
        v.dlen_sandwich.dlen_image
    );
    for d in &v.details {
        let _ = writeln!(out, "  - {d}");
    }
    for a in &v.anomalies {
        let _ = writeln!(out, "  ! {a}");
    }
    out
}

impl fmt::Display for GroupAnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_text(self))
    }
}
