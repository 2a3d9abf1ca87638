use std::fmt::Write as _;
use std::fs;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use seqpriv::bounds::{example1_build, example1_ratio, Example1Params};
use seqpriv::cache::{
    adversary_view_distribution, delivery_blocks, placement, private_wrap, cache_length_bound,
    user_decode, CacheConfig, CachedScheme, PublicCache,
};
use seqpriv::code::{Bitstring, CodeMode, PadKey, Transcript};
use seqpriv::frl::{cardinality_bound, frl_construct, min_entropy_search, OrderingPolicy, SequentialChain};
use seqpriv::pipeline::{
    audit_demands, decode_session, encode_session, expected_length, leakage_audit,
    transcript_distribution, worst_case_sweep, Database, Decoded, DemandReport, DemandVector,
    ExpectedLength, ForcedCoupling, LeakageAudit, PrivateScheme, Realization, SeededCoupling,
    SessionConfig,
};
use seqpriv::{Error, Result};

use crate::output::{emit, structured_on_stdout};
use crate::source::{demands, load_database, load_dist, parse_rational};
use crate::{AuditArgs, BoundsSweepArgs, CacheDemoArgs, FrlBuildArgs, RunArgs, SweepArgs};

const CSV_HEADER: [&str; 9] = [
    "N", "K", "F", "demands", "lower", "upper_card", "upper_est", "measured", "ratio",
];

#[derive(Serialize)]
struct BoundRow {
    n: usize,
    k: usize,
    f: u32,
    demands: String,
    lower: f64,
    upper_card: u64,
    upper_est: Option<u64>,
    measured: Option<f64>,
    ratio: Option<f64>,
}

impl BoundRow {
    fn from_report(db: &Database, r: &DemandReport) -> Self {
        let b = &r.bounds;
        BoundRow {
            n: db.n(),
            k: r.demands.len(),
            f: db.file_bits(),
            demands: r.demands.to_string(),
            lower: b.lower,
            upper_card: b.upper_cardinality,
            upper_est: b.upper_entropy_estimate,
            measured: b.measured,
            ratio: (b.lower > 0.0).then(|| b.upper_cardinality as f64 / b.lower),
        }
    }
}

fn print_text(show: bool, text: &str) {
    if show {
        print!("{text}");
    }
}

fn one_based(d: &DemandVector) -> Vec<usize> {
    d.as_slice().iter().map(|i| i + 1).collect()
}

fn mode_name(m: CodeMode) -> &'static str {
    match m {
        CodeMode::Fixed => "fixed",
        CodeMode::Entropy => "entropy",
    }
}

fn hex(bits: &Bitstring) -> String {
    bits.bits()
        .chunks(8)
        .map(|c| {
            let byte = c.iter().enumerate().fold(0u8, |acc, (i, &b)| acc | (u8::from(b) << (7 - i)));
            format!("{byte:02x}")
        })
        .collect()
}

#[derive(Serialize)]
struct FrlReport {
    private: String,
    target: String,
    atoms: Vec<(String, String)>,
    p_u: Vec<String>,
    g: Vec<(usize, usize, usize)>,
    entropy_bits: f64,
    size: usize,
    cardinality_bound: String,
    searched: bool,
}

pub fn frl_build(a: FrlBuildArgs) -> Result<()> {
    let pxy = load_dist(&a.spec)?;
    let policy = if a.search {
        min_entropy_search(&pxy, a.budget)?.0
    } else {
        OrderingPolicy::canonical()
    };
    let m = frl_construct(&pxy, &policy)?;
    m.verify()?;
    let mut text = m.to_string();
    for (x, order) in policy.explicit() {
        writeln!(text, "ordering for {}={x}: {order:?}", m.private().name()).unwrap();
    }
    print_text(!structured_on_stdout(&a.output), &text);
    let report = FrlReport {
        private: m.private().name().to_string(),
        target: m.target().name().to_string(),
        atoms: m.atoms().iter().map(|at| (at.start.to_string(), at.end.to_string())).collect(),
        p_u: m.p_u().iter().map(ToString::to_string).collect(),
        g: m.g_table().collect(),
        entropy_bits: m.entropy(),
        size: m.size(),
        cardinality_bound: cardinality_bound(m.private().size(), &[], m.target().size()).to_string(),
        searched: a.search,
    };
    emit::<_, BoundRow>(&a.output, &report, None)
}

#[derive(Serialize)]
struct Inputs {
    source: String,
    demands: Vec<usize>,
    mode: &'static str,
    seed: u64,
    key_size: usize,
    limit: u128,
}

#[derive(Serialize)]
struct RunReport {
    inputs: Inputs,
    slot_sizes: Vec<usize>,
    realization: Realization,
    key: usize,
    transcript: String,
    slot_lengths: Vec<usize>,
    decoded: Decoded,
    decoded_ok: bool,
    expected_length: ExpectedLength,
    leakage: LeakageAudit,
    bounds: seqpriv::bounds::BoundReport,
    sandwich: Option<bool>,
}

fn session_config(d: DemandVector, mode: CodeMode, key_size: Option<usize>) -> SessionConfig {
    SessionConfig {
        key_size,
        ..SessionConfig::new(d, mode)
    }
}

fn describe_report(text: &mut String, r: &DemandReport, sandwich: Option<bool>) {
    let per_key: Vec<String> = r.length.per_key_exact.iter().map(ToString::to_string).collect();
    writeln!(text, "E[L | W=w]: [{}]  max = {:.6} bits", per_key.join(", "), r.length.max).unwrap();
    writeln!(
        text,
        "leakage: exact zero = {}, I(C;X) = {:.6} bits",
        r.leakage.exact_zero, r.leakage.bits
    )
    .unwrap();
    let est = r.bounds.upper_entropy_estimate.map_or("-".to_string(), |e| e.to_string());
    writeln!(
        text,
        "bounds: lower = {:.6}, upper (cardinality) = {}, upper (entropy estimate) = {est}",
        r.bounds.lower, r.bounds.upper_cardinality
    )
    .unwrap();
    match sandwich {
        Some(ok) => writeln!(text, "sandwich lower <= E[L] <= upper: {}", if ok { "holds" } else { "VIOLATED" }),
        None => writeln!(text, "sandwich: not checked (key larger than the private alphabet)"),
    }
    .unwrap();
}

pub fn pipeline_run(a: RunArgs) -> Result<()> {
    let (db, source) = load_database(&a.source, a.limit)?;
    let d = demands(&a.demands, db.n())?;
    let mode = CodeMode::from(a.mode);
    let cfg = session_config(d.clone(), mode, a.key_size);
    let scheme = PrivateScheme::build(&db, &cfg)?;
    let t_size = scheme.key_size();

    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let realization = db.sample(&mut rng);
    let key = PadKey::new(rng.random_range(0..t_size), t_size)?;
    let mut draws = SeededCoupling::new(rng.random());
    let t = encode_session(&db, &realization, &scheme, key, &mut draws)?;
    let decoded = decode_session(&t, key, &scheme)?;
    let wanted: Vec<usize> = d.as_slice().iter().map(|&i| realization.files[i]).collect();
    let decoded_ok = decoded.x == realization.x && decoded.files == wanted;
    if let Some(path) = &a.transcript {
        fs::write(path, t.to_packed())?;
    }

    let audit = audit_demands(&db, &cfg, a.limit)?;
    let sandwich = (t_size == db.private_size()).then(|| audit.bounds.sandwich_holds(1e-9));

    let mut text = String::new();
    writeln!(text, "source: {source}").unwrap();
    writeln!(
        text,
        "demands: {d}  mode: {}  seed: {}  key size: {t_size}",
        mode_name(mode),
        a.seed
    )
    .unwrap();
    let sizes: Vec<String> = audit
        .slot_sizes
        .iter()
        .enumerate()
        .map(|(i, s)| format!("|{}|={s}", SequentialChain::aux_name(i)))
        .collect();
    writeln!(text, "auxiliary sizes: {}", sizes.join(" ")).unwrap();
    writeln!(text, "realization: x={} files={:?}  key w={}", realization.x, realization.files, key.value()).unwrap();
    writeln!(text, "transcript: {t}  ({} bits)", t.total_length()).unwrap();
    writeln!(
        text,
        "decoded: x={} files={:?}  {}",
        decoded.x,
        decoded.files,
        if decoded_ok { "correct" } else { "WRONG" }
    )
    .unwrap();
    describe_report(&mut text, &audit, sandwich);
    print_text(!structured_on_stdout(&a.output), &text);

    let report = RunReport {
        inputs: Inputs {
            source,
            demands: one_based(&d),
            mode: mode_name(mode),
            seed: a.seed,
            key_size: t_size,
            limit: a.limit,
        },
        slot_sizes: audit.slot_sizes.clone(),
        realization,
        key: key.value(),
        transcript: t.to_string(),
        slot_lengths: t.slots().iter().map(|s| s.bits.len()).collect(),
        decoded,
        decoded_ok,
        expected_length: audit.length.clone(),
        leakage: audit.leakage.clone(),
        bounds: audit.bounds.clone(),
        sandwich,
    };
    emit::<_, BoundRow>(&a.output, &report, None)?;
    check_run(decoded_ok, &audit, sandwich)
}

fn check_run(decoded_ok: bool, audit: &DemandReport, sandwich: Option<bool>) -> Result<()> {
    if !decoded_ok {
        return Err(Error::Invariant("decoded values differ from the realization".into()));
    }
    if !audit.leakage.exact_zero {
        return Err(Error::Invariant(format!("transcript leaks {} bits about X", audit.leakage.bits)));
    }
    if !audit.length.key_invariant {
        return Err(Error::Invariant("expected length depends on the key".into()));
    }
    if sandwich == Some(false) {
        return Err(Error::Invariant("measured length lies outside the bounds".into()));
    }
    Ok(())
}

#[derive(Serialize)]
struct SweepReport<'a> {
    source: String,
    k: usize,
    mode: &'static str,
    rows: &'a [DemandReport],
    worst: Vec<usize>,
}

pub fn pipeline_sweep(a: SweepArgs) -> Result<()> {
    let (db, source) = load_database(&a.source, a.limit)?;
    let mode = CodeMode::from(a.mode);
    let table = worst_case_sweep(&db, a.k, mode, a.limit)?;
    let mut text = String::new();
    writeln!(text, "source: {source}  K={}  mode: {}", a.k, mode_name(mode)).unwrap();
    writeln!(text, "{:<12} {:>10} {:>10} {:>10} {:>10} {:>8}", "demands", "E[L]", "lower", "upper", "estimate", "private").unwrap();
    for (i, r) in table.rows.iter().enumerate() {
        writeln!(
            text,
            "{:<12} {:>10.4} {:>10.4} {:>10} {:>10} {:>8}{}",
            r.demands.to_string(),
            r.length.max,
            r.bounds.lower,
            r.bounds.upper_cardinality,
            r.bounds.upper_entropy_estimate.map_or("-".into(), |e| e.to_string()),
            r.leakage.exact_zero,
            if i == table.worst { "  <- worst" } else { "" }
        )
        .unwrap();
    }
    print_text(!structured_on_stdout(&a.output), &text);
    let rows: Vec<BoundRow> = table.rows.iter().map(|r| BoundRow::from_report(&db, r)).collect();
    let report = SweepReport {
        source,
        k: a.k,
        mode: mode_name(mode),
        rows: &table.rows,
        worst: one_based(&table.rows[table.worst].demands),
    };
    emit(&a.output, &report, Some((&CSV_HEADER, &rows)))?;
    for r in &table.rows {
        if !r.leakage.exact_zero {
            return Err(Error::Invariant(format!("demands {} leak {} bits", r.demands, r.leakage.bits)));
        }
        if t_matches(&db, r) && !r.bounds.sandwich_holds(1e-9) {
            return Err(Error::Invariant(format!("demands {}: length outside the bounds", r.demands)));
        }
    }
    Ok(())
}

fn t_matches(db: &Database, r: &DemandReport) -> bool {
    r.length.per_key.len() == db.private_size()
}

pub fn bounds_sweep(a: BoundsSweepArgs) -> Result<()> {
    let p = parse_rational(&a.p)?;
    let mode = CodeMode::from(a.mode);
    let mut rows = Vec::new();
    for &k in &a.k {
        if k == 0 {
            return Err(Error::Config("K must be positive".into()));
        }
        for f in a.f_min..=a.f_max {
            let d = DemandVector::new((0..k).collect(), k)?;
            let mut row = BoundRow {
                n: k,
                k,
                f,
                demands: d.to_string(),
                lower: (k as u64 * u64::from(f)) as f64,
                upper_card: upper_bound_cardinality_bits(k, f),
                upper_est: None,
                measured: None,
                ratio: Some(example1_ratio(k, f)),
            };
            if a.measure {
                measure(&mut row, &p, d, mode, a.limit)?;
            }
            rows.push(row);
        }
    }
    let mut text = String::new();
    writeln!(text, "{:>3} {:>4} {:>10} {:>10} {:>10} {:>10} {:>8}", "K", "F", "lower", "upper", "estimate", "measured", "ratio").unwrap();
    for r in &rows {
        writeln!(
            text,
            "{:>3} {:>4} {:>10} {:>10} {:>10} {:>10} {:>8.4}",
            r.k,
            r.f,
            r.lower,
            r.upper_card,
            r.upper_est.map_or("-".into(), |e| e.to_string()),
            r.measured.map_or("-".into(), |m| format!("{m:.4}")),
            r.ratio.unwrap_or(f64::NAN)
        )
        .unwrap();
    }
    print_text(!structured_on_stdout(&a.output), &text);
    emit(&a.output, &rows, Some((&CSV_HEADER, &rows)))
}

fn upper_bound_cardinality_bits(k: usize, f: u32) -> u64 {
    let y = num::BigUint::from(1u8) << f;
    seqpriv::bounds::upper_bound_cardinality_big(2, &vec![y; k])
}

/// Builds the masked family with `N = K` and audits it; leaves the row
/// unmeasured when the enumeration limit is hit.
fn measure(row: &mut BoundRow, p: &seqpriv::prob::Rational, d: DemandVector, mode: CodeMode, limit: u128) -> Result<()> {
    let params = Example1Params { p: p.clone(), n: row.k, k: row.k, f: row.f };
    let outcome = example1_build(&params, limit)
        .and_then(Database::new)
        .and_then(|db| audit_demands(&db, &SessionConfig::new(d, mode), limit));
    match outcome {
        Ok(r) => {
            if !r.leakage.exact_zero {
                return Err(Error::Invariant(format!("K={} F={}: transcript leaks", row.k, row.f)));
            }
            row.lower = r.bounds.lower;
            row.upper_est = r.bounds.upper_entropy_estimate;
            row.measured = Some(r.length.max);
        }
        Err(e @ Error::LimitExceeded { .. }) => eprintln!("K={} F={}: not measured ({e})", row.k, row.f),
        Err(e) => return Err(e),
    }
    Ok(())
}

#[derive(Serialize)]
struct UserResult {
    user: usize,
    demand: usize,
    decoded: usize,
    expected: usize,
    ok: bool,
}

#[derive(Serialize)]
struct CacheReport {
    config: CacheConfig,
    source: String,
    demands: Vec<usize>,
    seed: u64,
    mode: &'static str,
    q: usize,
    block_bits: u32,
    realization: Realization,
    key: usize,
    placement: Vec<Vec<(String, String)>>,
    blocks: Vec<(Vec<usize>, String)>,
    stream_hex: String,
    public_cache: Vec<String>,
    transcript: String,
    transcript_bits: usize,
    users: Vec<UserResult>,
    leakage: LeakageAudit,
    expected_length: ExpectedLength,
    bound: u64,
}

pub fn cache_demo(a: CacheDemoArgs) -> Result<()> {
    let m = parse_rational(&a.m)?;
    let cfg = CacheConfig::new(a.n, a.k, a.f, m)?;
    let (db, source) = match &a.spec {
        Some(path) => (Database::new(load_dist(path)?)?, format!("spec {}", path.display())),
        None => {
            let p = parse_rational(&a.p)?;
            let params = Example1Params { p: p.clone(), n: a.n, k: 1, f: a.f };
            (
                Database::new(example1_build(&params, a.limit)?)?,
                format!("masked family p={p} N={} F={}", a.n, a.f),
            )
        }
    };
    let demands: Vec<usize> = match &a.demands {
        Some(ds) => ds
            .iter()
            .map(|&d| d.checked_sub(1).ok_or_else(|| Error::Config("demands are numbered from 1".into())))
            .collect::<Result<_>>()?,
        None => (0..a.k).map(|i| i % a.n).collect(),
    };
    let mode = CodeMode::from(a.mode);
    let scheme = CachedScheme::build(&cfg, &db, &demands, mode)?;

    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let realization = db.sample(&mut rng);
    let key = PadKey::new(rng.random_range(0..db.private_size()), db.private_size())?;
    let mut draws = SeededCoupling::new(rng.random());

    let caches = placement(&cfg, &realization.files)?;
    let stream = delivery_blocks(&cfg, &realization.files, &demands)?;
    let mut public = PublicCache::new();
    let t = private_wrap(&scheme, &stream, realization.x, key, &mut draws, &mut public)?;
    let users: Vec<UserResult> = caches
        .iter()
        .enumerate()
        .map(|(k, z)| {
            let decoded = user_decode(&scheme, k, &t, z, key)?;
            let expected = realization.files[demands[k]];
            Ok(UserResult { user: k + 1, demand: demands[k] + 1, decoded, expected, ok: decoded == expected })
        })
        .collect::<Result<_>>()?;

    let view = adversary_view_distribution(&scheme, a.limit)?;
    let leakage = leakage_audit(&view)?;
    let length = expected_length(&transcript_distribution(scheme.code(), a.limit)?);
    let bound = cache_length_bound(&cfg, db.private_size());

    let mut all = Bitstring::new();
    for b in &stream.blocks {
        all.extend(b);
    }
    let mut text = String::new();
    writeln!(text, "source: {source}").unwrap();
    writeln!(
        text,
        "N={} K={} M={} F={}  p={} Q={} block={} bits  demands={:?}  seed={}",
        cfg.n(), cfg.k(), cfg.m(), cfg.f(), cfg.p(), cfg.q(), cfg.block_bits(),
        demands.iter().map(|d| d + 1).collect::<Vec<_>>(), a.seed
    )
    .unwrap();
    writeln!(text, "realization: x={} files={:?}  key w={}", realization.x, realization.files, key.value()).unwrap();
    writeln!(text, "placement:").unwrap();
    for z in &caches {
        let items: Vec<String> = z.entries.iter().map(|(i, b)| format!("{i}={b}")).collect();
        writeln!(text, "  Z{}: {}", z.user + 1, items.join(" ")).unwrap();
    }
    writeln!(text, "blocks (hex {}):", if all.is_empty() { "-".to_string() } else { hex(&all) }).unwrap();
    for (g, b) in stream.subsets.iter().zip(&stream.blocks) {
        let users: Vec<String> = g.iter().map(|u| (u + 1).to_string()).collect();
        writeln!(text, "  C{{{}}} = {b}", users.join(",")).unwrap();
    }
    writeln!(text, "transcript: {t}  ({} bits)", t.total_length()).unwrap();
    let log: Vec<String> = public.entries().iter().map(ToString::to_string).collect();
    writeln!(text, "public cache: [{}]", log.join(", ")).unwrap();
    for u in &users {
        writeln!(
            text,
            "user {}: wants file {}, decoded {} ({})",
            u.user,
            u.demand,
            u.decoded,
            if u.ok { "correct" } else { "WRONG" }
        )
        .unwrap();
    }
    writeln!(text, "leakage (transcript + public cache): exact zero = {}, I = {:.6} bits", leakage.exact_zero, leakage.bits).unwrap();
    writeln!(text, "E[L] = {:.6} bits, bound = {bound} bits", length.max).unwrap();
    print_text(!structured_on_stdout(&a.output), &text);

    let ok = users.iter().all(|u| u.ok);
    let within = mode != CodeMode::Fixed || length.max <= bound as f64 + 1e-9;
    let report = CacheReport {
        config: cfg.clone(),
        source,
        demands: demands.iter().map(|d| d + 1).collect(),
        seed: a.seed,
        mode: mode_name(mode),
        q: cfg.q(),
        block_bits: cfg.block_bits(),
        realization,
        key: key.value(),
        placement: caches
            .iter()
            .map(|z| z.entries.iter().map(|(i, b)| (i.to_string(), b.to_string())).collect())
            .collect(),
        blocks: stream.subsets.iter().cloned().zip(stream.blocks.iter().map(ToString::to_string)).collect(),
        stream_hex: hex(&all),
        public_cache: log,
        transcript: t.to_string(),
        transcript_bits: t.total_length(),
        users,
        leakage: leakage.clone(),
        expected_length: length,
        bound,
    };
    emit::<_, BoundRow>(&a.output, &report, None)?;
    if !ok {
        return Err(Error::Invariant("a user decoded the wrong file".into()));
    }
    if !leakage.exact_zero {
        return Err(Error::Invariant("the adversary view depends on X".into()));
    }
    if !within {
        return Err(Error::Invariant("expected length exceeds the bound".into()));
    }
    Ok(())
}

#[derive(Serialize)]
struct AuditReport {
    source: String,
    demands: Vec<usize>,
    mode: &'static str,
    key_size: usize,
    transcripts: usize,
    outcomes_checked: usize,
    lossless: bool,
    pad_independent_of_aux: bool,
    leakage: LeakageAudit,
    expected_length: ExpectedLength,
    decoded: Option<Decoded>,
}

pub fn audit(a: AuditArgs) -> Result<()> {
    let (db, source) = load_database(&a.source, a.limit)?;
    let d = demands(&a.demands, db.n())?;
    let mode = CodeMode::from(a.mode);
    let scheme = PrivateScheme::build(&db, &session_config(d.clone(), mode, a.key_size))?;
    let code = scheme.code();
    let td = transcript_distribution(code, a.limit)?;
    let leakage = leakage_audit(&td)?;
    let length = expected_length(&td);

    let mut checked = 0;
    let mut lossless = true;
    for o in code.outcomes(a.limit)? {
        for key in PadKey::all(code.key_size()) {
            let t = code.encode(o.x, &o.targets, key, &mut ForcedCoupling::new(o.aux.clone()))?;
            let back = decode_session(&t, key, &scheme)?;
            lossless &= back.x == o.x && back.files == o.targets;
            checked += 1;
        }
    }
    let aux: Vec<String> = (0..code.chain().len()).map(SequentialChain::aux_name).collect();
    let aux_refs: Vec<&str> = aux.iter().map(String::as_str).collect();
    let pad_independent = aux_refs.is_empty()
        || code.pad_aux_distribution(a.limit)?.exact_independent(&["Xt"], &aux_refs)?;

    let decoded = match (&a.transcript, a.key) {
        (Some(path), Some(w)) => {
            let t = Transcript::from_packed(&fs::read(path)?)?;
            Some(decode_session(&t, PadKey::new(w, code.key_size())?, &scheme)?)
        }
        _ => None,
    };

    let mut text = String::new();
    writeln!(text, "source: {source}").unwrap();
    writeln!(text, "demands: {d}  mode: {}  key size: {}", mode_name(mode), code.key_size()).unwrap();
    writeln!(text, "distinct transcripts: {}", td.transcripts().len()).unwrap();
    writeln!(text, "lossless over {checked} (outcome, key) pairs: {lossless}").unwrap();
    writeln!(text, "padded symbol independent of auxiliaries: {pad_independent}").unwrap();
    writeln!(text, "leakage: exact zero = {}, I(C;X) = {:.6} bits", leakage.exact_zero, leakage.bits).unwrap();
    let per_key: Vec<String> = length.per_key_exact.iter().map(ToString::to_string).collect();
    writeln!(text, "E[L | W=w]: [{}]", per_key.join(", ")).unwrap();
    if let Some(dec) = &decoded {
        writeln!(text, "decoded transcript: x={} files={:?}", dec.x, dec.files).unwrap();
    }
    print_text(!structured_on_stdout(&a.output), &text);

    let report = AuditReport {
        source,
        demands: one_based(&d),
        mode: mode_name(mode),
        key_size: code.key_size(),
        transcripts: td.transcripts().len(),
        outcomes_checked: checked,
        lossless,
        pad_independent_of_aux: pad_independent,
        leakage: leakage.clone(),
        expected_length: length.clone(),
        decoded,
    };
    emit::<_, BoundRow>(&a.output, &report, None)?;
    if !lossless {
        return Err(Error::Invariant("some outcome does not decode".into()));
    }
    if !leakage.exact_zero || !pad_independent {
        return Err(Error::Invariant("transcript depends on X".into()));
    }
    if !length.key_invariant {
        return Err(Error::Invariant("expected length depends on the key".into()));
    }
    Ok(())
}
