use seqpriv::bounds::{example1_build, Example1Params};
use seqpriv::cache::*;
use seqpriv::code::{CodeMode, PadKey};
use seqpriv::pipeline::{leakage_audit, Database, ForcedCoupling, SeededCoupling};
use seqpriv::prob::{ratio, Rational};

const LIMIT: u128 = 1_000_000;

fn example1(n: usize, f: u32) -> Database {
    let p = Example1Params { p: ratio(1, 2), n, k: 1, f };
    Database::new(example1_build(&p, LIMIT).unwrap()).unwrap()
}

fn all_demands(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0..n.pow(k as u32))
        .map(|mut i| {
            (0..k)
                .map(|_| {
                    let d = i % n;
                    i /= n;
                    d
                })
                .collect()
        })
        .collect()
}

/// Runs every outcome and key through placement, wrap and per-user decode.
fn check_end_to_end(cfg: &CacheConfig, db: &Database, demands: &[usize], mode: CodeMode) {
    let scheme = CachedScheme::build(cfg, db, demands, mode).unwrap();
    let bound = cache_length_bound(cfg, db.private_size());
    for (t, p) in db.joint().iter() {
        assert!(*p > Rational::from_integer(0.into()));
        let (x, files) = (t[0], &t[1..]);
        let caches = placement(cfg, files).unwrap();
        let stream = delivery_blocks(cfg, files, demands).unwrap();
        let blocks: Vec<usize> = stream.blocks.iter().map(|b| b.to_uint() as usize).collect();
        for (aux, _) in scheme.code().aux_chains(x, &blocks).unwrap() {
            for key in PadKey::all(db.private_size()) {
                let mut public = PublicCache::new();
                let tr = private_wrap(&scheme, &stream, x, key, &mut ForcedCoupling::new(aux.clone()), &mut public)
                    .unwrap();
                assert_eq!(public.entries().len(), cfg.q());
                if mode == CodeMode::Fixed {
                    assert!(tr.total_length() as u64 <= bound);
                }
                for (k, cache) in caches.iter().enumerate() {
                    let got = user_decode(&scheme, k, &tr, cache, key).unwrap();
                    assert_eq!(got, files[demands[k]]);
                }
            }
        }
    }
}

#[test]
fn two_users_decode_everywhere() {
    let cfg = CacheConfig::new(2, 2, 2, ratio(1, 1)).unwrap();
    let db = example1(2, 2);
    for demands in all_demands(2, 2) {
        check_end_to_end(&cfg, &db, &demands, CodeMode::Fixed);
    }
    check_end_to_end(&cfg, &db, &[0, 1], CodeMode::Entropy);
}

#[test]
fn adversary_view_is_independent() {
    let cfg = CacheConfig::new(2, 2, 2, ratio(1, 1)).unwrap();
    let db = example1(2, 2);
    for demands in all_demands(2, 2) {
        let scheme = CachedScheme::build(&cfg, &db, &demands, CodeMode::Fixed).unwrap();
        let td = adversary_view_distribution(&scheme, LIMIT).unwrap();
        assert!(leakage_audit(&td).unwrap().exact_zero);
    }
}

#[test]
fn small_files_wrap_privately() {
    let cfg = CacheConfig::new(2, 2, 2, ratio(1, 1)).unwrap();
    let db = example1(2, 2);
    let scheme = CachedScheme::build(&cfg, &db, &[0, 1], CodeMode::Fixed).unwrap();
    let j = scheme.code().pad_aux_distribution(LIMIT).unwrap();
    assert!(j.exact_independent(&["Xt"], &["U1"]).unwrap());
}

#[test]
fn three_users_decode_everywhere() {
    // p = 1, three blocks of one bit each.
    let cfg = CacheConfig::new(2, 3, 3, ratio(2, 3)).unwrap();
    assert_eq!((cfg.q(), cfg.block_bits()), (3, 1));
    let db = example1(2, 3);
    check_end_to_end(&cfg, &db, &[0, 1, 1], CodeMode::Fixed);
    let scheme = CachedScheme::build(&cfg, &db, &[1, 0, 1], CodeMode::Fixed).unwrap();
    let td = adversary_view_distribution(&scheme, LIMIT).unwrap();
    assert!(leakage_audit(&td).unwrap().exact_zero);
}

#[test]
fn full_caching_sends_pad_only() {
    let cfg = CacheConfig::new(2, 2, 2, ratio(2, 1)).unwrap();
    let db = example1(2, 2);
    let scheme = CachedScheme::build(&cfg, &db, &[1, 0], CodeMode::Fixed).unwrap();
    let files = [0b10, 0b11];
    let stream = delivery_blocks(&cfg, &files, &[1, 0]).unwrap();
    let key = PadKey::new(1, 2).unwrap();
    let mut public = PublicCache::new();
    let tr = private_wrap(&scheme, &stream, 1, key, &mut SeededCoupling::new(0), &mut public).unwrap();
    assert_eq!(tr.slots().len(), 1);
    assert!(public.entries().is_empty());
    let caches = placement(&cfg, &files).unwrap();
    assert_eq!(user_decode(&scheme, 0, &tr, &caches[0], key).unwrap(), 0b11);
    assert_eq!(user_decode(&scheme, 1, &tr, &caches[1], key).unwrap(), 0b10);
    assert_eq!(cache_length_bound(&cfg, 2), 1);
}

#[test]
fn deterministic_blocks_give_empty_slots() {
    // Both files equal X, repeated as both bits; each block then is 0.
    let cfg = CacheConfig::new(2, 2, 2, ratio(1, 1)).unwrap();
    let vars = vec![
        seqpriv::prob::Alphabet::new("X", 2).unwrap(),
        seqpriv::prob::Alphabet::file("Y1", 2).unwrap(),
        seqpriv::prob::Alphabet::file("Y2", 2).unwrap(),
    ];
    let joint = seqpriv::prob::JointDist::new(
        vars,
        [(vec![0, 0, 0], ratio(1, 3)), (vec![1, 3, 3], ratio(2, 3))],
    )
    .unwrap();
    let db = Database::new(joint).unwrap();
    let scheme = CachedScheme::build(&cfg, &db, &[0, 1], CodeMode::Fixed).unwrap();
    assert_eq!(scheme.code().chain().aux_sizes(), vec![1]);
    let stream = delivery_blocks(&cfg, &[3, 3], &[0, 1]).unwrap();
    let mut public = PublicCache::new();
    let tr = private_wrap(&scheme, &stream, 1, PadKey::new(0, 2).unwrap(), &mut SeededCoupling::new(3), &mut public)
        .unwrap();
    assert_eq!(tr.total_length(), 1);
}

#[test]
fn withheld_blocks_do_not_change_earlier_messages() {
    let cfg = CacheConfig::new(2, 3, 3, ratio(2, 3)).unwrap();
    let db = example1(2, 3);
    let scheme = CachedScheme::build(&cfg, &db, &[0, 1, 1], CodeMode::Entropy).unwrap();
    let files = [0b101, 0b011];
    let stream = delivery_blocks(&cfg, &files, &[0, 1, 1]).unwrap();
    let key = PadKey::new(0, 2).unwrap();
    for seed in 0..20 {
        let mut full_cache = PublicCache::new();
        let full = private_wrap(&scheme, &stream, 1, key, &mut SeededCoupling::new(seed), &mut full_cache).unwrap();
        for held in 0..=stream.blocks.len() {
            let mut public = PublicCache::new();
            let mut draws = SeededCoupling::new(seed);
            let mut w = scheme.wrapper(1, key, &mut public).unwrap();
            for b in &stream.blocks[..held] {
                w.push_block(b, &mut draws).unwrap();
            }
            assert_eq!(w.transcript().slots(), &full.slots()[..held + 1]);
            drop(w);
            assert_eq!(public.entries(), &full_cache.entries()[..held]);
        }
    }
}

#[test]
fn rejected_configurations() {
    assert!(CacheConfig::new(3, 2, 2, ratio(1, 1)).is_err());
    assert!(CacheConfig::new(1, 1, 1, ratio(0, 1)).is_err());
    let cfg = CacheConfig::new(2, 2, 40, ratio(1, 1)).unwrap();
    assert!(cache_length_bound(&cfg, 2) > 0);
    let db = example1(2, 2);
    assert!(CachedScheme::build(&cfg, &db, &[0, 1], CodeMode::Fixed).is_err());
    let cfg = CacheConfig::new(2, 2, 2, ratio(1, 1)).unwrap();
    assert!(CachedScheme::build(&cfg, &db, &[0, 2], CodeMode::Fixed).is_err());
    assert!(CachedScheme::build(&cfg, &db, &[0], CodeMode::Fixed).is_err());
}
