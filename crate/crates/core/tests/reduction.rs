//! The 3-Partition to Square construction: shape laws, the yes direction by
//! explicit computations, and the checks available for the no direction.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use shuffle_square::alphabet::sigma::{A1, A2, B};
use shuffle_square::partition::{self, PartitionInstance};
use shuffle_square::queue::{self, Config, SearchOutcome, DEFAULT_BUDGET};
use shuffle_square::reduction::{
    build_gadgets, build_reduction, build_v_gadget, synthesize_witness, verify_reduction_instance,
    Agreement, SearchResult,
};
use shuffle_square::{count_alternations, Matching, Sym, Word};

fn inst(values: &[u32]) -> PartitionInstance {
    PartitionInstance::normalize(values).unwrap()
}

fn random_instance(rng: &mut ChaCha8Rng, max_m: usize, max_value: u32) -> PartitionInstance {
    loop {
        let m = rng.gen_range(1..=max_m);
        let values: Vec<u32> = (0..3 * m).map(|_| rng.gen_range(1..=max_value)).collect();
        if let Ok(i) = PartitionInstance::normalize(&values) {
            return i;
        }
    }
}

/// Symbol count of `w_S` summed part by part.
fn closed_form_length(values: &[u32], m: usize, big: usize) -> usize {
    let load = 1 + m * (2 * big + 1);
    let dist = 1 + m * (3 * big + 7);
    let v_parts = 288 * m * m + 72 * m;
    let rounds: usize = (1..=3 * m)
        .map(|k| {
            let n = values[k - 1] as usize;
            let t = 3 * m - k;
            2 * (n + 4) * (t + 1) + 4 * t * (big + 4) + n + 2
        })
        .sum();
    load + dist + v_parts + rounds
}

/// Every multiset of `3m` values from `0..=max` whose sum `m` divides.
fn all_instances(m: usize, max: u32) -> Vec<PartitionInstance> {
    fn go(len: usize, lo: u32, max: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if acc.len() == len {
            out.push(acc.clone());
            return;
        }
        for v in lo..=max {
            acc.push(v);
            go(len, v, max, acc, out);
            acc.pop();
        }
    }
    let mut raw = Vec::new();
    go(3 * m, 0, max, &mut Vec::new(), &mut raw);
    raw.iter()
        .filter_map(|v| PartitionInstance::normalize(v).ok())
        .collect()
}

/// Block sizes of a queue of the form `Π a1 b^{i} a2`, if it has that form.
fn block_sizes(queue: &[Sym]) -> Option<Vec<u32>> {
    let mut sizes = Vec::new();
    let mut rest = queue;
    while let Some((&A1, tail)) = rest.split_first() {
        let bs = tail.iter().take_while(|&&s| s == B).count();
        if tail.get(bs) != Some(&A2) {
            return None;
        }
        sizes.push(bs as u32);
        rest = &tail[bs + 1..];
    }
    rest.is_empty().then_some(sizes)
}

fn triples_sum_to(sizes: &[u32], m: usize, target: u32) -> bool {
    sizes.len() == 3 * m && sizes.chunks(3).all(|c| c.iter().sum::<u32>() == target)
}

#[test]
fn spans_tile_the_word() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..20 {
        let s = random_instance(&mut rng, 3, 6);
        let out = build_reduction(&s);
        let mut at = 0;
        for span in &out.spans {
            assert_eq!(span.start, at, "{}", span.name);
            at = span.end;
        }
        assert_eq!(at, out.word.len());
    }
}

#[test]
fn length_follows_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..50 {
        let s = random_instance(&mut rng, 3, 6);
        let out = build_reduction(&s);
        assert_eq!(
            out.word.len(),
            closed_form_length(&s.values, s.m, s.target as usize),
            "{:?}",
            s.values
        );
    }
}

#[test]
fn gadget_alternation_counts() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let s = random_instance(&mut rng, 3, 6);
        for k in 1..=3 * s.m {
            let g = build_gadgets(&s, k).unwrap();
            let t = 3 * s.m - k;
            assert_eq!(count_alternations(&g.d, &A1, &A2), t + 1);
            assert_eq!(count_alternations(&g.e, &A1, &A2), 2 * t + 1);
            assert_eq!(count_alternations(&g.f, &A1, &A2), 2 * t);
        }
    }
}

#[test]
fn witnesses_for_every_small_yes_instance() {
    let mut checked = 0;
    for m in 1..=2 {
        for s in all_instances(m, 3) {
            let Some(sol) = partition::solve(&s).unwrap() else {
                continue;
            };
            let started = Instant::now();
            let out = build_reduction(&s);
            let trace = synthesize_witness(&s, &sol).unwrap();
            assert!(trace.accepts(out.word.syms()), "{:?}", s.values);
            let m = queue::trace_to_matching(out.word.syms(), &trace).unwrap();
            assert_eq!(m.validate(out.word.syms()), Ok(()));
            assert!(started.elapsed() < Duration::from_secs(1));
            checked += 1;
        }
    }
    assert!(checked > 20);
}

#[test]
fn loader_phase_of_the_witness() {
    let s = inst(&[2, 1, 1]);
    let out = build_reduction(&s);
    let trace = synthesize_witness(&s, &partition::solve(&s).unwrap().unwrap()).unwrap();
    let w = out.word.syms();
    let mut c = Config::initial();
    for step in &trace.steps[..out.span("load").unwrap().end] {
        c.apply(w, step.action()).unwrap();
    }
    assert_eq!(
        Vec::from(c.queue),
        Word::sigma("e0 b b b b b b b b e").into_syms()
    );
}

#[test]
fn tampered_solution_is_refused() {
    let s = inst(&[3, 2, 1, 2, 2, 2]);
    let mut sol = partition::solve(&s).unwrap().unwrap();
    sol.groups[0].swap(0, 1);
    sol.groups[1][0] = sol.groups[0][0];
    assert!(synthesize_witness(&s, &sol).is_err());
}

#[test]
fn unhinted_search_accepts_single_group_instances() {
    for values in [[1, 1, 1], [2, 1, 1], [2, 2, 2], [3, 2, 1], [4, 1, 1]] {
        let s = inst(&values);
        let out = build_reduction(&s);
        match queue::accepts(out.word.syms(), DEFAULT_BUDGET) {
            SearchOutcome::Accept(t) => assert!(t.accepts(out.word.syms())),
            other => panic!("{values:?}: {other:?}"),
        }
    }
}

#[test]
fn yes_instance_report_agrees() {
    let report = verify_reduction_instance(&inst(&[2, 1, 1]), DEFAULT_BUDGET).unwrap();
    assert!(report.solvable);
    assert_eq!(report.witness_valid, Some(true));
    assert_eq!(report.search, SearchResult::Accept);
    assert_eq!(report.agreement, Agreement::Consistent);
}

#[test]
fn no_instance_finds_no_computation() {
    let s = inst(&[3, 1, 1, 1, 1, 1]);
    assert_eq!(partition::solve(&s).unwrap(), None);
    let report = verify_reduction_instance(&s, 200_000).unwrap();
    assert!(!report.solvable);
    assert_ne!(report.search, SearchResult::Accept);
    assert_eq!(report.agreement, Agreement::ConsistentWithNo);
}

#[test]
fn distributor_leaves_only_partition_shaped_queues() {
    for values in [[1, 1, 1], [2, 1, 1], [2, 2, 2], [3, 2, 1]] {
        let s = inst(&values);
        let out = build_reduction(&s);
        let w = out.word.syms();
        let at = out.ver_start();
        let queues = queue::configurations_at(w, at, DEFAULT_BUDGET).unwrap();
        assert!(!queues.is_empty());
        for q in &queues {
            let sizes = block_sizes(q).unwrap_or_else(|| panic!("{values:?}: {q:?}"));
            assert!(triples_sum_to(&sizes, s.m, s.target));
        }
        let traces = match queue::accepting_traces(w, 500_000, 16) {
            Ok(t) | Err(t) => t,
        };
        assert!(!traces.is_empty());
        for t in &traces {
            let mut c = Config::initial();
            for step in &t.steps[..at] {
                c.apply(w, step.action()).unwrap();
            }
            let sizes = block_sizes(&Vec::from(c.queue)).unwrap();
            assert!(triples_sum_to(&sizes, s.m, s.target));
        }
    }
}

/// Each `v_j` occurrence matched position by position with its twin.
fn twin_matching(l: usize) -> Matching {
    let mut pairs = Vec::new();
    let mut at = 0;
    for j in (1..=l).rev() {
        let len = 2 * j + 2;
        pairs.extend((0..len).map(|i| (at + i, at + len + i)));
        at += 2 * len;
    }
    Matching::new(pairs).unwrap()
}

#[test]
fn v_gadget_has_one_matching() {
    for l in 1..=3 {
        let v = build_v_gadget(l);
        assert_eq!(v.len(), 2 * (1..=l).map(|j| 2 * j + 2).sum::<usize>());
        let found = queue::enumerate_matchings(v.syms(), DEFAULT_BUDGET).unwrap();
        assert_eq!(
            found.into_iter().collect::<Vec<_>>(),
            vec![twin_matching(l)]
        );
    }
}

#[test]
fn end_markers_pair_in_order() {
    let alphabet = shuffle_square::Alphabet::new(["a", "b", "e0", "e"]).unwrap();
    let alphabet = std::sync::Arc::new(alphabet);
    let (a, b, e0, e) = (Sym(0), Sym(1), Sym(2), Sym(3));
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut squares = 0;
    for _ in 0..200 {
        let piece = |rng: &mut ChaCha8Rng| -> Vec<Sym> {
            (0..rng.gen_range(0..=3))
                .map(|_| if rng.gen_bool(0.5) { a } else { b })
                .collect()
        };
        let (u1, u2) = (piece(&mut rng), piece(&mut rng));
        let (x1, x2) = if rng.gen_bool(0.5) {
            (u1.clone(), u2.clone())
        } else {
            (piece(&mut rng), piece(&mut rng))
        };
        let mut w = vec![e0];
        for part in [&u1[..], &[e], &u2, &[e, e0], &x1, &[e], &x2, &[e]] {
            w.extend_from_slice(part);
        }
        let w = Word::new(alphabet.clone(), w).unwrap();
        let ends: Vec<usize> = (0..w.len()).filter(|&i| w[i] == e).collect();
        let starts: Vec<usize> = (0..w.len()).filter(|&i| w[i] == e0).collect();
        let found = queue::enumerate_matchings(w.syms(), DEFAULT_BUDGET).unwrap();
        squares += usize::from(!found.is_empty());
        for m in found {
            assert!(m.pairs().contains(&(starts[0], starts[1])), "{w}");
            assert!(m.pairs().contains(&(ends[0], ends[2])), "{w}");
            assert!(m.pairs().contains(&(ends[1], ends[3])), "{w}");
        }
    }
    assert!(squares >= 80);
}
