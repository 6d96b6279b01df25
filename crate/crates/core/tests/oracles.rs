//! Implementation results checked against independent brute-force oracles.

mod common;

use std::collections::{BTreeMap, HashMap};

use common::*;
use ffp_core::dataio::{
    generate_synthetic, library_from_str, library_to_string, read_dataset, skewed_counts,
    stratified_split, tokenize, vectorize_text, write_dataset, Document, Prediction, SyntheticSpec,
};
use ffp_core::eval::{
    diff_baseline, evaluate, predict_dataset, run_seeds, sweep_k, NearestCentroid, SeedSource,
};
use ffp_core::explain::{feature_classes, intersect, plot_lines, shared_features, PlotData};
use ffp_core::{
    aggregate_class, build_class_fingerprint, classify_dataset, fingerprint_instance,
    rank_features, ClassFingerprint, FeatureVector, FingerprintLibrary, FingerprintParams,
    NormRule,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn aggregate_matches_column_sum() {
    let mut r = rng(1);
    let rows: Vec<Vec<f64>> = (0..100)
        .map(|_| (0..8).map(|_| r.gen_range(-5.0..5.0)).collect())
        .collect();
    let vectors: Vec<FeatureVector> = rows
        .iter()
        .map(|v| FeatureVector::new(v.clone()).unwrap())
        .collect();
    let got = aggregate_class(&vectors).unwrap();
    assert_eq!(got.values(), oracle_column_sum(&rows).as_slice());
}

#[test]
fn ranks_match_sort_oracle() {
    let mut r = rng(2);
    for _ in 0..20 {
        // Coarse values so ties occur.
        let v: Vec<f64> = (0..50).map(|_| r.gen_range(-10..10) as f64 / 2.0).collect();
        let ranks = rank_features(&FeatureVector::new(v.clone()).unwrap()).unwrap();
        assert_eq!(ranks.ranks(), oracle_ranks(&v).as_slice());
    }
}

#[test]
fn class_fingerprint_top_k_matches_partial_sort() {
    let mut r = rng(3);
    let ds = gaussian_clusters(&mut r, 1, 20, 40, 3.0);
    let vectors: Vec<FeatureVector> = ds.instances().iter().map(|i| i.vector.clone()).collect();
    let fp =
        build_class_fingerprint(&vectors, "c0", FingerprintParams::new(5, 0.8).unwrap()).unwrap();

    let rows: Vec<Vec<f64>> = vectors.iter().map(|v| v.values().to_vec()).collect();
    let sums = oracle_column_sum(&rows);
    let mut idx: Vec<usize> = (0..20).collect();
    idx.select_nth_unstable_by(4, |&a, &b| sums[b].partial_cmp(&sums[a]).unwrap());
    let mut top: Vec<usize> = idx[..5].to_vec();
    top.sort_unstable();
    let mut got: Vec<usize> = fp.entries().iter().map(|e| e.feature).collect();
    got.sort_unstable();
    assert_eq!(got, top);
    assert_eq!(fp.to_dense(), oracle_dense_fingerprint(&sums, 5, 0.8));
}

#[test]
fn instance_fingerprint_equals_single_member_class() {
    let mut r = rng(4);
    for k in [1, 3, 10, 40] {
        let v = FeatureVector::new((0..30).map(|_| r.gen_range(-1.0..1.0)).collect()).unwrap();
        let p = FingerprintParams::new(k, 0.8).unwrap();
        let inst = fingerprint_instance(&v, "u", p).unwrap();
        let class = build_class_fingerprint(std::slice::from_ref(&v), "u", p).unwrap();
        assert_eq!(inst, class);
    }
}

#[test]
fn classify_matches_dense_loop_on_gaussian_clusters() {
    let mut r = rng(5);
    let train = gaussian_clusters(&mut r, 5, 24, 30, 2.0);
    let test = gaussian_clusters(&mut r, 5, 24, 20, 2.0);
    let (k, a) = (8, 0.8);
    let lib = FingerprintLibrary::from_dataset(
        &train,
        FingerprintParams::new(k, a).unwrap(),
        NormRule::FingerprintSize,
    )
    .unwrap();
    let got = classify_dataset(&test, &lib).unwrap();
    let want = oracle_classify(&train, &test, k, a, k as f64);
    for ((_, res), (label, scores)) in got.iter().zip(&want) {
        assert_eq!(&res.predicted, label);
        let got_scores: Vec<f64> = res.scores.iter().map(|(_, s)| *s).collect();
        assert_eq!(&got_scores, scores);
    }
}

#[test]
fn evaluate_matches_confusion_oracle() {
    let mut r = rng(6);
    let classes = labels(7);
    let rows: Vec<(String, Vec<f64>)> = (0..100)
        .map(|_| (classes[r.gen_range(0..7)].clone(), vec![0.0]))
        .collect();
    let gold = dataset(1, classes.clone(), rows);
    let preds: Vec<Prediction> = gold
        .instances()
        .iter()
        .map(|i| Prediction::new(i.id.clone(), classes[r.gen_range(0..7)].clone()))
        .collect();
    let report = evaluate(&preds, &gold).unwrap();

    let mut tp = [0usize; 7];
    let mut fp = [0usize; 7];
    let mut fneg = [0usize; 7];
    let idx = |l: &str| classes.iter().position(|c| c == l).unwrap();
    for (inst, p) in gold.instances().iter().zip(&preds) {
        let (g, q) = (idx(&inst.label), idx(&p.label));
        if g == q {
            tp[g] += 1;
        } else {
            fp[q] += 1;
            fneg[g] += 1;
        }
    }
    let mut f1_sum = 0.0;
    for c in 0..7 {
        let f1 = if tp[c] == 0 {
            0.0
        } else {
            2.0 * tp[c] as f64 / (2 * tp[c] + fp[c] + fneg[c]) as f64
        };
        let m = &report.per_class[c];
        assert!((m.f1 - f1).abs() < 1e-12);
        assert!((m.recall - tp[c] as f64 / (tp[c] + fneg[c]).max(1) as f64).abs() < 1e-12);
        assert_eq!(report.confusion[c][c], tp[c]);
        f1_sum += f1;
    }
    assert!((report.macro_f1 - f1_sum / 7.0).abs() < 1e-12);
    assert_eq!(report.total(), 100);
}

#[test]
fn sweep_at_full_size_matches_dense_oracle() {
    let spec =
        SyntheticSpec::one_hot_blocks(labels(4), 32, vec![60, 30, 20, 10], 1.0, 1.2, 8).unwrap();
    let ds = generate_synthetic(&spec).unwrap();
    let parts = stratified_split(&ds, &[0.7, 0.3], 8).unwrap();
    let (train, val) = (&parts[0], &parts[1]);
    let table = sweep_k(train, val, &[1, 8, 32], 0.8, NormRule::FingerprintSize).unwrap();
    assert_eq!(table.rows.len(), 3);

    let oracle = oracle_classify(train, val, 32, 0.8, 32.0);
    let preds: Vec<Prediction> = val
        .instances()
        .iter()
        .zip(&oracle)
        .map(|(i, (l, _))| Prediction::new(i.id.clone(), l.clone()))
        .collect();
    let dense_f1 = evaluate(&preds, val).unwrap().macro_f1;
    assert!((table.row(32).unwrap().macro_f1 - dense_f1).abs() <= 0.02);
}

#[test]
fn single_k_sweep_equals_direct_build_and_evaluate() {
    let spec = SyntheticSpec::one_hot_blocks(labels(3), 12, vec![20, 10, 5], 1.0, 0.8, 9).unwrap();
    let ds = generate_synthetic(&spec).unwrap();
    let parts = stratified_split(&ds, &[0.6, 0.4], 9).unwrap();
    let table = sweep_k(&parts[0], &parts[1], &[4], 0.8, NormRule::FingerprintSize).unwrap();
    let lib = FingerprintLibrary::from_dataset(
        &parts[0],
        FingerprintParams::new(4, 0.8).unwrap(),
        NormRule::FingerprintSize,
    )
    .unwrap();
    let direct = evaluate(&predict_dataset(&parts[1], &lib).unwrap(), &parts[1]).unwrap();
    assert_eq!(table.rows[0].macro_f1, direct.macro_f1);
    assert_eq!(table.best_k, 4);
}

#[test]
fn seed_mean_equals_mean_of_reruns() {
    let spec = SyntheticSpec::one_hot_blocks(labels(3), 15, vec![40, 20, 10], 1.0, 1.0, 0).unwrap();
    let seeds = [11, 12, 13, 14, 15];
    let params = FingerprintParams::new(5, 0.8).unwrap();
    let runs = run_seeds(
        SeedSource::Synthetic {
            spec: &spec,
            train_fraction: 0.7,
        },
        &seeds,
        params,
        NormRule::FingerprintSize,
    )
    .unwrap();
    let mut total = 0.0;
    for (&seed, &(run_seed, f1)) in seeds.iter().zip(&runs.runs) {
        assert_eq!(seed, run_seed);
        let ds = generate_synthetic(&spec.clone().with_seed(seed)).unwrap();
        let parts = stratified_split(&ds, &[0.7, 0.3], seed).unwrap();
        let lib =
            FingerprintLibrary::from_dataset(&parts[0], params, NormRule::FingerprintSize).unwrap();
        let rerun = evaluate(&predict_dataset(&parts[1], &lib).unwrap(), &parts[1])
            .unwrap()
            .macro_f1;
        assert_eq!(f1, rerun);
        total += rerun;
    }
    assert!((runs.mean - total / 5.0).abs() < 1e-12);
}

#[test]
fn fixed_data_seed_runs_have_zero_variance() {
    let spec = SyntheticSpec::one_hot_blocks(labels(3), 15, vec![20, 10, 10], 1.0, 1.0, 4).unwrap();
    let ds = generate_synthetic(&spec).unwrap();
    let parts = stratified_split(&ds, &[0.5, 0.5], 4).unwrap();
    let params = FingerprintParams::new(5, 0.8).unwrap();
    let source = SeedSource::Fixed {
        train: &parts[0],
        test: &parts[1],
    };
    let one = run_seeds(source, &[7], params, NormRule::FingerprintSize).unwrap();
    assert_eq!(one.mean, one.runs[0].1);
    let five = run_seeds(source, &[1, 2, 3, 4, 5], params, NormRule::FingerprintSize).unwrap();
    assert_eq!(five.std_dev(), 0.0);
    assert_eq!(five.mean, one.mean);
    assert!(run_seeds(source, &[], params, NormRule::FingerprintSize).is_err());
}

#[test]
fn diff_matches_column_diff() {
    let counts = skewed_counts(600, &[83.2, 12.5, 1.8, 1.1, 1.0, 0.3, 0.1]).unwrap();
    let spec = SyntheticSpec::one_hot_blocks(labels(7), 42, counts, 1.0, 1.5, 21).unwrap();
    let ds = generate_synthetic(&spec).unwrap();
    let parts = stratified_split(&ds, &[0.7, 0.3], 21).unwrap();
    let lib = FingerprintLibrary::from_dataset(
        &parts[0],
        FingerprintParams::new(6, 0.8).unwrap(),
        NormRule::FingerprintSize,
    )
    .unwrap();
    let ffp = predict_dataset(&parts[1], &lib).unwrap();
    let base = NearestCentroid::fit(&parts[0])
        .unwrap()
        .predict_dataset(&parts[1])
        .unwrap();
    let set = diff_baseline(&ffp, &base, &parts[1], &lib).unwrap();
    let expected = ffp
        .iter()
        .zip(&base)
        .filter(|(a, b)| a.label != b.label)
        .count();
    assert_eq!(set.len(), expected);
    assert!(set.items.iter().all(|d| d.ffp_label != d.baseline_label));
    assert!(diff_baseline(&ffp, &ffp, &parts[1], &lib)
        .unwrap()
        .is_empty());
}

#[test]
fn diff_on_constructed_predictions() {
    let ds = dataset(
        2,
        labels(2),
        (0..10)
            .map(|i| (format!("c{}", i % 2), vec![i as f64, 1.0]))
            .collect(),
    );
    let lib = FingerprintLibrary::from_dataset(
        &ds,
        FingerprintParams::new(1, 0.8).unwrap(),
        NormRule::FingerprintSize,
    )
    .unwrap();
    let ffp: Vec<Prediction> = ds
        .instances()
        .iter()
        .map(|i| Prediction::new(i.id.clone(), "c0"))
        .collect();
    let mut base = ffp.clone();
    for i in [2, 5, 7] {
        base[i].label = "c1".into();
    }
    let set = diff_baseline(&ffp, &base, &ds, &lib).unwrap();
    assert_eq!(
        set.items.iter().map(|d| d.id.as_str()).collect::<Vec<_>>(),
        ["x2", "x5", "x7"]
    );
    assert_eq!(set.items[0].ffp_scores.len(), 2);
    base.pop();
    assert!(diff_baseline(&ffp, &base, &ds, &lib).is_err());
}

#[test]
fn shared_features_match_brute_force_scan() {
    let mut r = rng(10);
    let p = FingerprintParams::new(6, 0.8).unwrap();
    let fps: Vec<ClassFingerprint> = (0..10)
        .map(|c| {
            let mut feats: Vec<usize> = (0..40).collect();
            for i in (1..feats.len()).rev() {
                feats.swap(i, r.gen_range(0..=i));
            }
            ClassFingerprint::from_ranked_features(format!("c{c}"), 40, p, &feats[..6]).unwrap()
        })
        .collect();
    let lib = FingerprintLibrary::new(fps, 6.0).unwrap();
    for min in 2..5 {
        let report = shared_features(&lib, min).unwrap();
        let mut want: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for f in 0..40 {
            let cls: Vec<String> = lib
                .fingerprints()
                .iter()
                .filter(|fp| fp.entries().iter().any(|e| e.feature == f))
                .map(|fp| fp.label().to_string())
                .collect();
            if cls.len() >= min {
                want.insert(f, cls);
            }
        }
        let got: BTreeMap<usize, Vec<String>> = report
            .features
            .iter()
            .map(|s| (s.feature, s.classes.clone()))
            .collect();
        assert_eq!(got, want);
    }
    // Shared (>= 2) plus singletons partition the union of supports.
    let all = feature_classes(&lib);
    let shared = shared_features(&lib, 2).unwrap().features.len();
    let singles = all.iter().filter(|f| f.classes.len() == 1).count();
    assert_eq!(shared + singles, all.len());
}

#[test]
fn intersection_plot_lines_match_report() {
    let mut r = rng(12);
    let p = FingerprintParams::new(10, 0.8).unwrap();
    let a = fingerprint_instance(
        &FeatureVector::new((0..25).map(|_| r.gen()).collect()).unwrap(),
        "u",
        p,
    )
    .unwrap();
    let b = fingerprint_instance(
        &FeatureVector::new((0..25).map(|_| r.gen()).collect()).unwrap(),
        "c",
        p,
    )
    .unwrap();
    let report = intersect(&a, &b, 10.0).unwrap();
    let text = plot_lines(PlotData::Intersection(&report));
    assert_eq!(text.lines().count(), report.shared.len());
    let sum: f64 = text
        .lines()
        .map(|l| l.split_whitespace().nth(1).unwrap().parse::<f64>().unwrap())
        .sum();
    assert!((sum / 10.0 - report.contribution).abs() < 1e-12);
    assert_eq!(plot_lines(PlotData::Fingerprint(&a)).lines().count(), 25);
}

#[test]
fn dataset_file_field_counts_match_line_counter() {
    let spec =
        SyntheticSpec::one_hot_blocks(labels(5), 13, vec![400, 300, 150, 100, 50], 2.0, 0.7, 13)
            .unwrap();
    let ds = generate_synthetic(&spec).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("big.csv");
    write_dataset(&ds, &path).unwrap();

    let text = std::fs::read_to_string(&path).unwrap();
    let data_lines: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data_lines.len(), 1000);
    assert!(data_lines.iter().all(|l| l.matches(',').count() == 13 + 1));

    let back = read_dataset(&path).unwrap();
    assert_eq!(back, ds);
}

#[test]
fn vectorizer_matches_dictionary_counter() {
    let mut r = rng(14);
    let words = [
        "the", "quick", "brown", "fox", "Jumps", "over", "lazy", "dog", "and", "cat",
    ];
    let docs: Vec<Document> = (0..20)
        .map(|i| {
            let n = r.gen_range(3..15);
            let text: Vec<&str> = (0..n).map(|_| words[r.gen_range(0..words.len())]).collect();
            Document::new(
                format!("doc{i}"),
                format!("author{}", i % 3),
                text.join(" ") + ".",
            )
        })
        .collect();
    let out = vectorize_text(&docs, None).unwrap();
    for (doc, inst) in docs.iter().zip(out.dataset.instances()) {
        let mut counts: HashMap<String, f64> = HashMap::new();
        for w in doc
            .text
            .split(|c: char| !c.is_alphanumeric())
            .filter(|w| !w.is_empty())
        {
            *counts.entry(w.to_lowercase()).or_default() += 1.0;
        }
        for (j, tok) in out.vocabulary.tokens().iter().enumerate() {
            assert_eq!(
                inst.vector.values()[j],
                counts.get(tok).copied().unwrap_or(0.0)
            );
        }
    }
    // Concatenation is additive under a shared vocabulary.
    let joined = Document::new("j", "author0", format!("{} {}", docs[0].text, docs[1].text));
    let j = vectorize_text(&[joined], Some(&out.vocabulary)).unwrap();
    let sum: Vec<f64> = out.dataset.instances()[0]
        .vector
        .values()
        .iter()
        .zip(out.dataset.instances()[1].vector.values())
        .map(|(a, b)| a + b)
        .collect();
    assert_eq!(j.dataset.instances()[0].vector.values(), sum.as_slice());
    assert_eq!(tokenize("Jumps").next().unwrap(), "jumps");
}

#[test]
fn skewed_counts_within_one_of_rounded_targets() {
    let pct = [83.0, 12.5, 1.0, 1.0, 1.0, 0.3, 0.1];
    let sum: f64 = pct.iter().sum();
    let counts = skewed_counts(10_000, &pct).unwrap();
    let spec = SyntheticSpec::one_hot_blocks(labels(7), 14, counts.clone(), 1.0, 0.0, 3).unwrap();
    let ds = generate_synthetic(&spec).unwrap();
    assert_eq!(ds.len(), 10_000);
    for (c, &realized) in ds.class_counts().iter().enumerate() {
        let target = (10_000.0 * pct[c] / sum).round() as i64;
        assert!(
            (realized as i64 - target).abs() <= 1,
            "class {c}: {realized} vs {target}"
        );
    }
}

#[test]
fn large_random_library_round_trips() {
    let mut r = rng(15);
    let p = FingerprintParams::new(12, 0.37).unwrap();
    let fps: Vec<ClassFingerprint> = (0..100)
        .map(|c| {
            let v = FeatureVector::new((0..64).map(|_| r.gen_range(-3.0..3.0)).collect()).unwrap();
            fingerprint_instance(&v, format!("class{c}"), p).unwrap()
        })
        .collect();
    let lib = FingerprintLibrary::new(fps, 4.5).unwrap();
    assert_eq!(library_from_str(&library_to_string(&lib)).unwrap(), lib);
}
