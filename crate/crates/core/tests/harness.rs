use std::fs;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use braidcert::braid::BraidWord;
use braidcert::certify::{
    self, FoundCertificate, HarnessConfig, KernelStatus, SandwichStatus, SearchOutcome, Structure, SubgroupSpec,
    VerdictStatus,
};
use braidcert::dynnikov::{self, EntropyConfig};
use braidcert::error::Error;
use braidcert::perm_group::DerivedLength;

fn bundled_specs() -> Vec<(String, SubgroupSpec)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("specs");
    let mut paths: Vec<PathBuf> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            (name, SubgroupSpec::from_json(&fs::read_to_string(&p).unwrap()).unwrap())
        })
        .collect()
}

fn spec(n: usize, words: &[&str], structure: Option<Structure>) -> SubgroupSpec {
    SubgroupSpec::parse(n, words, structure).unwrap()
}

fn found(outcome: &SearchOutcome) -> &FoundCertificate {
    outcome.certificate().unwrap_or_else(|| panic!("expected a certificate, got {outcome:?}"))
}

#[test]
fn disjoint_twists_in_b4() {
    let s = spec(4, &["1", "3"], Some(Structure::DisjointTwists));
    let report = certify::analyze(&s, &HarnessConfig::default()).unwrap();
    assert_eq!(report.perm_image.order, 4);
    assert_eq!(report.perm_image.derived_length, DerivedLength::Solvable(1));
    assert!(report.entropy.generators.iter().all(|g| g.classification.is_zero()));
    assert!(report.kernel.all_commute);
    assert!(matches!(report.kernel.status, KernelStatus::Pass));
    assert!(matches!(report.verdict.dlen_sandwich.status, SandwichStatus::Pass));
    assert_eq!(report.verdict.status, VerdictStatus::Consistent);
    assert!(report.is_clean());
}

#[test]
fn rotation_and_transposition_in_b5() {
    let s = spec(5, &["1 2 3 4", "1"], None);
    let report = certify::analyze(&s, &HarnessConfig::default()).unwrap();
    assert_eq!(report.perm_image.order, 120);
    assert_eq!(report.perm_image.derived_length, DerivedLength::Unsolvable);
    let cert = found(&report.entropy.search);
    assert!(cert.certificate.rigorous);
    assert!(cert.certificate.is_coherent());
    assert!((0.4..=0.7).contains(&cert.certificate.dynnikov_estimate));
    assert_eq!(report.verdict.status, VerdictStatus::Consistent);
    assert!(report.is_clean());
}

#[test]
fn squares_in_b3_have_positive_entropy_with_trivial_image() {
    let s = spec(3, &["1 1", "2 2"], None);
    let report = certify::analyze(&s, &HarnessConfig::default()).unwrap();
    assert_eq!(report.perm_image.order, 1);
    assert!(report.perm_image.solvable);
    let cert = found(&report.entropy.search);
    assert_eq!(cert.certificate.word.letters(), &[1, 1, -2, -2]);
    assert_eq!(cert.generator_length, 2);
    // trace 6 in SL(2, Z)
    let expected = (3.0 + 8f64.sqrt()).ln();
    assert!((cert.certificate.burau_lower_bound - expected).abs() < 1e-9);
    assert!(matches!(report.kernel.status, KernelStatus::NotApplicable { .. }));
    assert_eq!(report.verdict.status, VerdictStatus::Consistent);
}

#[test]
fn search_examples() {
    let cfg = EntropyConfig::default();

    let rot = spec(5, &["1 2 3 4", "1"], None);
    let short = certify::find_positive_entropy(&rot, 2, &cfg).unwrap();
    assert!(matches!(short, SearchOutcome::Exhausted { max_len: 2, .. }));
    let long = certify::find_positive_entropy(&rot, 8, &cfg).unwrap();
    let cert = found(&long);
    assert_eq!(cert.generator_length, 3);
    assert_eq!(cert.certificate.word.letters(), &[1, 2, 3, 4, 1, 1]);

    let cyclic = spec(3, &["1"], None);
    assert!(matches!(
        certify::find_positive_entropy(&cyclic, 6, &cfg).unwrap(),
        SearchOutcome::Exhausted { max_len: 6, .. }
    ));

    let anosov = spec(3, &["1 -2"], None);
    let cert = certify::find_positive_entropy(&anosov, 1, &cfg).unwrap();
    let cert = found(&cert);
    assert!(cert.certificate.rigorous);
    assert!((cert.certificate.dynnikov_estimate - 0.9624).abs() < 1e-3);

    assert!(matches!(certify::find_positive_entropy(&anosov, 0, &cfg), Err(Error::InvalidConfig(_))));
}

#[test]
fn composite_rotation_word_is_periodic() {
    // (σ1σ2σ3σ4σ1)^4 is the full twist
    let w = BraidWord::parse("1 2 3 4 1", 5).unwrap();
    let full = BraidWord::half_twist(5).unwrap().pow(2);
    assert!(dynnikov::equal(&w.pow(4), &full).unwrap());
    assert!(dynnikov::classify(&w, &EntropyConfig::default()).unwrap().is_zero());
}

#[test]
fn kernel_word_examples() {
    let cyclic = spec(3, &["1"], None);
    let words: Vec<Vec<i32>> = certify::kernel_words(&cyclic, 4).iter().map(|w| w.letters().to_vec()).collect();
    assert_eq!(
        words,
        vec![vec![], vec![1, 1], vec![-1, -1], vec![1, 1, 1, 1], vec![-1, -1, -1, -1]]
    );

    let twists = spec(4, &["1", "3"], None);
    let words = certify::kernel_words(&twists, 2);
    assert!(words.iter().all(BraidWord::is_pure));
    for expected in [vec![1, 1], vec![3, 3], vec![-1, -1], vec![-3, -3]] {
        assert!(words.iter().any(|w| w.letters() == expected.as_slice()));
    }
    // σ1σ3 and σ3σ1 are the same braid and not pure
    assert!(words.iter().all(|w| w.letters() != [1, 3] && w.letters() != [3, 1]));

    for s in [&cyclic, &twists] {
        let empty = certify::kernel_words(s, 0);
        assert_eq!(empty.len(), 1);
        assert!(empty[0].is_empty());
    }
}

#[test]
fn sandwich_examples() {
    let cases = [
        (spec(4, &["1", "3"], Some(Structure::DisjointTwists)), 1, 1),
        (spec(3, &["1"], Some(Structure::Cyclic)), 1, 1),
        (spec(4, &["1 2 3 1 2 1"], Some(Structure::Cyclic)), 1, 1),
    ];
    for (s, dlen_group, dlen_image) in cases {
        let image = certify::permutation_image(&s, 1000).unwrap();
        let check = certify::check_dlen_sandwich(&s, &(&image).into()).unwrap();
        assert_eq!(check.dlen_group, Some(dlen_group));
        assert_eq!(check.dlen_image, DerivedLength::Solvable(dlen_image));
        assert!(matches!(check.status, SandwichStatus::Pass));
    }
    let delta = BraidWord::half_twist(4).unwrap();
    assert_eq!(delta.permutation().images(), vec![4, 3, 2, 1]);

    let noncommuting = spec(3, &["1", "2"], Some(Structure::DisjointTwists));
    let image = certify::permutation_image(&noncommuting, 1000).unwrap();
    assert!(matches!(
        certify::check_dlen_sandwich(&noncommuting, &(&image).into()),
        Err(Error::StructureContradicted(_))
    ));
    let two = spec(3, &["1", "1 1"], Some(Structure::Cyclic));
    let image = certify::permutation_image(&two, 1000).unwrap();
    assert!(certify::check_dlen_sandwich(&two, &(&image).into()).is_err());

    let plain = spec(3, &["1"], None);
    let image = certify::permutation_image(&plain, 1000).unwrap();
    let check = certify::check_dlen_sandwich(&plain, &(&image).into()).unwrap();
    assert!(matches!(check.status, SandwichStatus::Skipped { .. }));
}

#[test]
fn kernel_abelian_examples() {
    let cfg = HarnessConfig::default();
    let twists = certify::verify_kernel_abelian(&spec(4, &["1", "3"], None), 3, &cfg).unwrap();
    assert!(matches!(twists.status, KernelStatus::Pass));
    assert_eq!(twists.linking_rank, 2);

    let cyclic = certify::verify_kernel_abelian(&spec(3, &["1"], None), 4, &cfg).unwrap();
    assert!(matches!(cyclic.status, KernelStatus::Pass));
    assert_eq!(cyclic.linking_rank, 1);

    let squares = certify::verify_kernel_abelian(&spec(3, &["1 1", "2 2"], None), 3, &cfg).unwrap();
    assert!(matches!(squares.status, KernelStatus::NotApplicable { .. }));
    // the free group ⟨σ1², σ2²⟩ is itself in the kernel and is not abelian
    assert!(!squares.all_commute);
}

#[test]
fn report_formats() {
    let s = spec(3, &["1"], Some(Structure::Cyclic));
    let report = certify::analyze(&s, &HarnessConfig::default()).unwrap();
    let json = certify::emit_report(&report, "json").unwrap();
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    let keys: Vec<&str> = value.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["schema", "spec", "perm_image", "entropy", "kernel", "verdict"]);
    assert_eq!(value["schema"], certify::REPORT_SCHEMA);
    assert_eq!(value["verdict"]["status"], "CONSISTENT");

    let text = certify::emit_report(&report, "text").unwrap();
    assert!(text.contains("permutation image"));
    assert!(text.contains("verdict: CONSISTENT"));

    assert!(matches!(certify::emit_report(&report, "yaml"), Err(Error::UnknownFormat(f)) if f == "yaml"));
}

#[test]
fn reports_are_byte_identical_across_thread_counts() {
    let (_, s) = bundled_specs().into_iter().find(|(name, _)| name == "b5_unsolvable").unwrap();
    let cfg = HarnessConfig::default();
    let baseline = certify::emit_report(&certify::analyze(&s, &cfg).unwrap(), "json").unwrap();
    for threads in [1, 3] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        let again = pool.install(|| certify::emit_report(&certify::analyze(&s, &cfg).unwrap(), "json").unwrap());
        assert_eq!(baseline, again);
    }
}

#[test]
fn bundled_corpus_is_consistent_and_coherent() {
    let cfg = HarnessConfig::default();
    let specs = bundled_specs();
    assert!(specs.len() >= 5);
    for (name, s) in specs {
        let report = certify::analyze(&s, &cfg).unwrap();
        assert_eq!(report.verdict.status, VerdictStatus::Consistent, "{name}");
        assert!(report.verdict.anomalies.is_empty(), "{name}: {:?}", report.verdict.anomalies);
        if !report.perm_image.solvable {
            assert!(report.entropy.search.certificate().is_some(), "{name}");
        }
        for c in report.entropy.generators.iter().filter_map(|g| g.classification.certificate()) {
            assert!(c.is_coherent(), "{name}");
        }
        if let Some(c) = report.entropy.search.certificate() {
            assert!(c.certificate.is_coherent(), "{name}");
        }
    }
}

#[test]
fn unsolvable_images_always_yield_a_certificate() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let cfg = EntropyConfig::default();
    let mut unsolvable = 0;
    for _ in 0..100 {
        let n = rng.gen_range(3..=5);
        let k = rng.gen_range(1..=3);
        let words: Vec<BraidWord> = (0..k)
            .map(|_| {
                let len = rng.gen_range(1..=4);
                let letters = (0..len)
                    .map(|_| {
                        let g = rng.gen_range(1..n as i32);
                        if rng.gen_bool(0.5) { g } else { -g }
                    })
                    .collect();
                BraidWord::new(n, letters).unwrap()
            })
            .collect();
        let s = SubgroupSpec::from_words(n, words, None).unwrap();
        let image = certify::permutation_image(&s, 1000).unwrap();
        if image.is_solvable() {
            continue;
        }
        unsolvable += 1;
        let outcome = certify::find_positive_entropy(&s, 8, &cfg).unwrap();
        let cert = found(&outcome);
        assert!(cert.certificate.is_coherent());
    }
    assert!(unsolvable > 0);
}
