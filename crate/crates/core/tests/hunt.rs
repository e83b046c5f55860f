use rainbow::hunt::{hunt_exhaustive, hunt_random, random_trial_instance, RandomHuntConfig};

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn stirling2(n: u64, k: u64) -> u64 {
    match (n, k) {
        (0, 0) => 1,
        (_, 0) | (0, _) => 0,
        _ => k * stirling2(n - 1, k) + stirling2(n - 1, k - 1),
    }
}

/// Colored graphs on 1..=n_max labeled vertices, colorings up to renaming,
/// at most `colors` classes.
fn closed_form(n_max: u64, colors: u64) -> u64 {
    (1..=n_max)
        .map(|n| {
            let p = n * (n - 1) / 2;
            (0..=p)
                .map(|e| binomial(p, e) * (0..=colors.min(e)).map(|k| stirling2(e, k)).sum::<u64>())
                .sum::<u64>()
        })
        .sum()
}

#[test]
fn exhaustive_instance_count_matches_closed_form() {
    for (n, c) in [(1, 1), (2, 2), (3, 1), (3, 2), (3, 3), (4, 2)] {
        let r = hunt_exhaustive(n, c, 2);
        assert_eq!(r.instances_examined, closed_form(n as u64, c as u64), "n={n} c={c}");
        assert!(r.counterexample.is_none());
    }
    // 1 + 2 + (1 + 3 + 3*2 + 5)
    assert_eq!(closed_form(3, 3), 18);
}

#[test]
fn exhaustive_small_range_has_tight_cases() {
    let r = hunt_exhaustive(3, 3, 1);
    // The rainbow triangle meets 2mn exactly with m = 1.
    assert_eq!(r.pairs_checked, 1);
    assert_eq!(r.near_misses.len(), 1);
    assert_eq!(r.near_misses[0].slack, 0);
}

#[test]
fn exhaustive_report_is_independent_of_threads() {
    let one = hunt_exhaustive(4, 2, 1);
    let many = hunt_exhaustive(4, 2, 8);
    assert_eq!(one.render(), many.render());
}

#[test]
fn random_report_is_reproducible() {
    let config = RandomHuntConfig {
        seed: 7,
        trials: 200,
        n_max: 9,
        ..RandomHuntConfig::default()
    };
    let a = hunt_random(&config, 1);
    let b = hunt_random(&config, 4);
    assert_eq!(a.render(), b.render());
    assert_eq!(a.instances_examined, 200);
    assert!(a.counterexample.is_none());
    assert_eq!(random_trial_instance(&config, 3), random_trial_instance(&config, 3));
}

#[test]
fn near_misses_at_zero_slack_are_odd_rainbow_cliques() {
    let config = RandomHuntConfig {
        seed: 1,
        trials: 300,
        n_max: 9,
        ..RandomHuntConfig::default()
    };
    let r = hunt_random(&config, 2);
    for nm in r.near_misses.iter().filter(|nm| nm.slack == 0) {
        let n = nm.graph.vertex_count();
        assert_eq!(nm.graph.edge_count(), n * (n - 1) / 2);
        assert_eq!(nm.graph.color_count(), nm.graph.edge_count());
    }
}

#[test]
fn artifacts_are_written() {
    let dir = tempfile_dir();
    let r = hunt_exhaustive(3, 3, 1);
    let written = r.write_artifacts(&dir).unwrap();
    assert_eq!(written, vec![dir.join("near_1.ecg")]);
    let text = std::fs::read_to_string(&written[0]).unwrap();
    let g = rainbow::instance::parse_instance(&text).unwrap();
    assert_eq!(g.edge_count(), 3);
    std::fs::remove_dir_all(dir).unwrap();
}

fn tempfile_dir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("rainbow-hunt-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}
