use std::io::{Read, Write};
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};
use std::sync::Mutex;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use grobzdd::boolgb::{buchberger_with_stats, greedy_nf, ideal_generator, sat_check, SatResult, Strategy};
use grobzdd::boolpoly::{BoolPoly, BoolRing, Ordering};
use grobzdd::encode::{
    blast, mult_verification, mult_verification_tampered, pigeonhole, pigeonhole_cnf, word_level_encode,
};
use grobzdd::encode::{BitSystem, CarryMode, Circuit, Cnf};
use grobzdd::interp::{interpolate_simple, interpolate_smallest_lex, zeros, PartialFn, PointSet};
use grobzdd::ringstd::{nf_ring, std_basis, std_basis_with_stats, RingCriteria, RingOrdering, ZmPoly, ZmRing};
use serde_json::json;

use crate::{Cli, Command, Encode, Family, Format, Opts};

/// One result line: the text output, or a JSON object with the report
/// fields and the output lines.
struct Report {
    command: &'static str,
    instance: String,
    vars: usize,
    eqs: usize,
    basis_size: Option<usize>,
    verdict: Option<&'static str>,
    seconds: f64,
    output: Vec<String>,
}

impl Report {
    fn new(command: &'static str, instance: &str, vars: usize, eqs: usize) -> Report {
        Report {
            command,
            instance: instance.to_string(),
            vars,
            eqs,
            basis_size: None,
            verdict: None,
            seconds: 0.0,
            output: Vec::new(),
        }
    }

    fn json(&self) -> serde_json::Value {
        json!({
            "command": self.command,
            "instance": self.instance,
            "vars": self.vars,
            "eqs": self.eqs,
            "basis_size": self.basis_size,
            "verdict": self.verdict,
            "seconds": self.seconds,
            "output": self.output,
        })
    }

    fn emit(&self, format: Format, out: &mut dyn Write) -> Result<()> {
        match format {
            Format::Text => {
                for line in &self.output {
                    writeln!(out, "{line}")?;
                }
            }
            Format::Json => writeln!(out, "{}", self.json())?,
        }
        Ok(())
    }
}

fn read(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn name(path: &Path) -> String {
    path.display().to_string()
}

fn strategy(opts: &Opts) -> Strategy {
    Strategy {
        product_criterion: !opts.no_product_criterion,
        chain_criterion: !opts.no_chain_criterion,
        linear_lead_criterion: !opts.no_linear_lead_criterion,
        sugar: !opts.no_sugar,
        symmetry: !opts.no_symmetry,
        sym_cache: !opts.no_sym_cache,
        sym_max_vars: opts.sym_max_vars,
        weighted_length: opts.weighted_length,
        table: opts.table.clone(),
        conjoin_limit: opts.conjoin_limit,
    }
}

fn criteria(opts: &Opts) -> RingCriteria {
    RingCriteria { product: !opts.no_product_criterion, chain: !opts.no_chain_criterion, zero: !opts.no_zero_criterion }
}

fn bool_order(opts: &Opts) -> Result<Option<Ordering>> {
    Ok(opts.order.as_deref().map(str::parse).transpose()?)
}

fn ring_mode(src: &str, opts: &Opts) -> Result<bool> {
    Ok(opts.modulus.is_some() || grobzdd::text::parse_system_text(src)?.modulus.is_some())
}

fn load_bool(path: &Path, opts: &Opts) -> Result<(BoolRing, Vec<BoolPoly>)> {
    let src = read(path)?;
    BoolRing::parse_system(&src, bool_order(opts)?).with_context(|| name(path))
}

fn load_ring(src: &str, path: &Path, opts: &Opts) -> Result<(ZmRing, Vec<ZmPoly>)> {
    let ord = opts.order.as_deref().map(str::parse::<RingOrdering>).transpose()?;
    ZmRing::parse_system(src, opts.modulus, ord).with_context(|| name(path))
}

/// Boolean system from a system file or a DIMACS file.
fn load_sat_input(path: &Path, opts: &Opts) -> Result<(BitSystem, bool)> {
    let src = read(path)?;
    let dimacs = src.lines().any(|l| l.trim_start().starts_with("p cnf"));
    let bs = if dimacs {
        Cnf::parse_dimacs(&src).and_then(|c| c.to_polys()).with_context(|| name(path))?
    } else {
        let (ring, polys) = BoolRing::parse_system(&src, None).with_context(|| name(path))?;
        BitSystem::new(ring, polys, Vec::new(), Vec::new())?
    };
    let bs = match bool_order(opts)? {
        Some(o) => bs.with_ordering(o)?,
        None => bs,
    };
    Ok((bs, dimacs))
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<u8> {
    let opts = &cli.opts;
    match &cli.command {
        Command::Gb { file } => gb(file, opts, out),
        Command::Nf { file, poly, raw } => nf(file, poly, *raw, opts, out),
        Command::Sat { file } => sat(file, opts, out),
        Command::Zeros { file, points } => zeros_cmd(file, points.as_deref(), opts, out),
        Command::Interp { file, simple } => interp(file, *simple, opts, out),
        Command::Encode(e) => encode(e, opts, out),
        Command::Bench { family, sizes, jobs } => bench(*family, sizes, *jobs, opts, out),
    }
}

fn gb(file: &Path, opts: &Opts, out: &mut dyn Write) -> Result<u8> {
    let src = read(file)?;
    let start = Instant::now();
    let mut rep;
    if ring_mode(&src, opts)? {
        let (ring, polys) = load_ring(&src, file, opts)?;
        let (basis, stats) = std_basis_with_stats(&polys, criteria(opts));
        if opts.stats {
            eprintln!("{stats:?}");
        }
        rep = Report::new("gb", &name(file), ring.nvars(), polys.len());
        rep.output = basis.iter().map(ToString::to_string).collect();
    } else {
        let (ring, polys) = BoolRing::parse_system(&src, bool_order(opts)?).with_context(|| name(file))?;
        let (basis, stats) = buchberger_with_stats(&polys, &strategy(opts))?;
        if opts.stats {
            eprintln!("{stats:?}");
        }
        rep = Report::new("gb", &name(file), ring.nvars(), polys.len());
        rep.verdict = Some(if basis.len() == 1 && basis[0].is_one() { "unsat" } else { "sat" });
        rep.output = basis.iter().map(ToString::to_string).collect();
    }
    rep.basis_size = Some(rep.output.len());
    rep.seconds = start.elapsed().as_secs_f64();
    rep.emit(opts.format, out)?;
    Ok(0)
}

fn nf(file: &Path, poly: &str, raw: bool, opts: &Opts, out: &mut dyn Write) -> Result<u8> {
    let src = read(file)?;
    let start = Instant::now();
    let (line, vars, eqs, size) = if ring_mode(&src, opts)? {
        let (ring, polys) = load_ring(&src, file, opts)?;
        let f = ring.parse(poly).context("polynomial argument")?;
        let g = if raw { polys.clone() } else { std_basis(&polys, criteria(opts)) };
        (nf_ring(&f, &g).to_string(), ring.nvars(), polys.len(), g.len())
    } else {
        let (ring, polys) = BoolRing::parse_system(&src, bool_order(opts)?).with_context(|| name(file))?;
        let f = ring.parse(poly).context("polynomial argument")?;
        let g = if raw { polys.clone() } else { buchberger_with_stats(&polys, &strategy(opts))?.0 };
        (greedy_nf(&f, &g)?.to_string(), ring.nvars(), polys.len(), g.len())
    };
    let mut rep = Report::new("nf", &name(file), vars, eqs);
    rep.basis_size = Some(size);
    rep.output = vec![line];
    rep.seconds = start.elapsed().as_secs_f64();
    rep.emit(opts.format, out)?;
    Ok(0)
}

fn sat(file: &Path, opts: &Opts, out: &mut dyn Write) -> Result<u8> {
    if opts.modulus.is_some() {
        bail!("sat works on Boolean systems only");
    }
    let (bs, dimacs) = load_sat_input(file, opts)?;
    let start = Instant::now();
    let res = sat_check(bs.polys(), &strategy(opts))?;
    let mut rep = Report::new("sat", &name(file), bs.nvars(), bs.polys().len());
    rep.seconds = start.elapsed().as_secs_f64();
    let code = match res {
        SatResult::Unsat => {
            rep.verdict = Some("unsat");
            rep.output = vec!["s UNSATISFIABLE".into()];
            20
        }
        SatResult::Sat(model) => {
            rep.verdict = Some("sat");
            let names = bs.ring().names();
            let v: Vec<String> = if dimacs {
                (0..model.len())
                    .map(|i| if model[i] { format!("{}", i + 1) } else { format!("-{}", i + 1) })
                    .chain(["0".into()])
                    .collect()
            } else {
                names.iter().zip(&model).map(|(n, &b)| format!("{n}={}", u8::from(b))).collect()
            };
            rep.output = vec!["s SATISFIABLE".into(), format!("v {}", v.join(" "))];
            10
        }
    };
    rep.emit(opts.format, out)?;
    Ok(code)
}

fn zeros_cmd(file: &Path, points: Option<&Path>, opts: &Opts, out: &mut dyn Write) -> Result<u8> {
    let (ring, polys) = load_bool(file, opts)?;
    let start = Instant::now();
    let mut s = match points {
        Some(p) => PointSet::parse(&ring, &read(p)?).with_context(|| name(p))?,
        None => PointSet::full(&ring),
    };
    for p in &polys {
        s = zeros(p, &s)?;
    }
    let mut rep = Report::new("zeros", &name(file), ring.nvars(), polys.len());
    rep.verdict = Some(if s.is_empty() { "unsat" } else { "sat" });
    rep.output = s.to_text().lines().map(str::to_string).collect();
    rep.seconds = start.elapsed().as_secs_f64();
    rep.emit(opts.format, out)?;
    Ok(0)
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> grobzdd::Error {
    grobzdd::Error::Parse { line, column, message: message.into() }
}

/// Point/value file: optional `vars` line, then `bits value` lines.
fn parse_point_values(src: &str) -> std::result::Result<(BoolRing, PartialFn), grobzdd::Error> {
    let mut names: Option<Vec<String>> = None;
    let mut rows: Vec<(usize, Vec<bool>, bool)> = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        let t = raw.split('#').next().unwrap_or("").trim();
        if t.is_empty() {
            continue;
        }
        if let Some(rest) = t.strip_prefix("vars") {
            names = Some(rest.split_whitespace().map(str::to_string).collect());
            continue;
        }
        let fields: Vec<&str> = t.split_whitespace().collect();
        let [bits, val] = fields[..] else {
            return Err(parse_err(line, 1, "expected `bits value`"));
        };
        let pt = bits
            .chars()
            .enumerate()
            .map(|(c, ch)| match ch {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(parse_err(line, c + 1, format!("expected 0 or 1, found {ch:?}"))),
            })
            .collect::<std::result::Result<Vec<bool>, _>>()?;
        let v = match val {
            "0" => false,
            "1" => true,
            _ => return Err(parse_err(line, bits.len() + 2, "value must be 0 or 1")),
        };
        rows.push((line, pt, v));
    }
    let n = match (&names, rows.first()) {
        (Some(v), _) => v.len(),
        (None, Some(r)) => r.1.len(),
        (None, None) => return Err(parse_err(1, 1, "no points and no `vars` line")),
    };
    if let Some(r) = rows.iter().find(|r| r.1.len() != n) {
        return Err(parse_err(r.0, 1, format!("point has {} coordinates, expected {n}", r.1.len())));
    }
    let names = names.unwrap_or_else(|| (0..n).map(|i| format!("x{i}")).collect());
    let ring = BoolRing::new(&names, Ordering::Lex)?;
    let pick = |want: bool| rows.iter().filter(|r| r.2 == want).map(|r| r.1.clone()).collect::<Vec<_>>();
    let z = PointSet::from_points(&ring, &pick(false))?;
    let o = PointSet::from_points(&ring, &pick(true))?;
    Ok((ring.clone(), PartialFn::new(z, o)?))
}

fn interp(file: &Path, simple: bool, opts: &Opts, out: &mut dyn Write) -> Result<u8> {
    let src = read(file)?;
    let (ring, b) = parse_point_values(&src).with_context(|| name(file))?;
    let start = Instant::now();
    let p = if simple { interpolate_simple(&b) } else { interpolate_smallest_lex(&b) };
    let mut rep = Report::new("interp", &name(file), ring.nvars(), b.domain().len() as usize);
    rep.output = vec![p.to_string()];
    rep.seconds = start.elapsed().as_secs_f64();
    rep.emit(opts.format, out)?;
    Ok(0)
}

fn encode(e: &Encode, opts: &Opts, out: &mut dyn Write) -> Result<u8> {
    let start = Instant::now();
    let order = bool_order(opts)?;
    let reorder = |bs: BitSystem| -> Result<BitSystem> {
        Ok(match &order {
            Some(o) => bs.with_ordering(o.clone())?,
            None => bs,
        })
    };
    let (instance, vars, eqs, text) = match e {
        Encode::Circuit { file, bits, aux } => {
            let c = Circuit::parse(&read(file)?).with_context(|| name(file))?;
            let ws = word_level_encode(&c)?;
            if *bits {
                let mode = if *aux { CarryMode::Aux } else { CarryMode::Expanded };
                let bs = reorder(blast(&ws, mode)?)?;
                (name(file), bs.nvars(), bs.polys().len(), bs.to_text())
            } else {
                (name(file), ws.ring().nvars(), ws.polys().len(), ws.to_text())
            }
        }
        Encode::Cnf { file } => {
            let bs = reorder(Cnf::parse_dimacs(&read(file)?).and_then(|c| c.to_polys()).with_context(|| name(file))?)?;
            (name(file), bs.nvars(), bs.polys().len(), bs.to_text())
        }
        Encode::Hole { k, dimacs: true } => {
            let cnf = pigeonhole_cnf(*k)?;
            (format!("hole{k}"), cnf.nvars(), cnf.clauses().len(), cnf.to_dimacs())
        }
        Encode::Hole { k, dimacs: false } => {
            let bs = reorder(pigeonhole(*k)?)?;
            (format!("hole{k}"), bs.nvars(), bs.polys().len(), bs.to_text())
        }
        Encode::Mult { n, tampered } => {
            let bs = reorder(if *tampered { mult_verification_tampered(*n)? } else { mult_verification(*n)? })?;
            (format!("mult{n}x{n}"), bs.nvars(), bs.polys().len(), bs.to_text())
        }
    };
    let mut rep = Report::new("encode", &instance, vars, eqs);
    rep.output = text.lines().map(str::to_string).collect();
    rep.seconds = start.elapsed().as_secs_f64();
    rep.emit(opts.format, out)?;
    Ok(0)
}

#[derive(Clone, Copy, Debug)]
enum Instance {
    Hole(usize),
    Mult(usize),
}

impl Instance {
    fn name(self) -> String {
        match self {
            Instance::Hole(k) => format!("hole{k}"),
            Instance::Mult(n) => format!("mult{n}x{n}"),
        }
    }
}

fn bench_one(inst: Instance, order: Option<Ordering>, strat: &Strategy, show_stats: bool) -> Result<Report> {
    let bs = match inst {
        Instance::Hole(k) => pigeonhole(k)?,
        Instance::Mult(n) => mult_verification(n)?,
    };
    let bs = match order {
        Some(o) => bs.with_ordering(o)?,
        None => bs,
    };
    let start = Instant::now();
    let conj = if strat.conjoin_limit > 0 { ideal_generator(bs.polys(), strat.conjoin_limit)? } else { None };
    let gens = conj.map_or_else(|| bs.polys().to_vec(), |p| vec![p]);
    let (basis, stats) = buchberger_with_stats(&gens, strat)?;
    if show_stats {
        eprintln!("{}: {stats:?}", inst.name());
    }
    let mut rep = Report::new("bench", &inst.name(), bs.nvars(), bs.polys().len());
    rep.seconds = start.elapsed().as_secs_f64();
    rep.basis_size = Some(basis.len());
    rep.verdict = Some(if basis.len() == 1 && basis[0].is_one() { "unsat" } else { "sat" });
    Ok(rep)
}

fn bench(family: Family, sizes: &[usize], jobs: usize, opts: &Opts, out: &mut dyn Write) -> Result<u8> {
    let pick = |default: &[usize]| if sizes.is_empty() { default.to_vec() } else { sizes.to_vec() };
    let mut insts = Vec::new();
    if family != Family::Mult {
        insts.extend(pick(&[4, 5, 6]).into_iter().map(Instance::Hole));
    }
    if family != Family::Hole {
        insts.extend(pick(&[3, 4]).into_iter().map(Instance::Mult));
    }
    let order = bool_order(opts)?;
    let strat = strategy(opts);
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<Result<Report>>>> = Mutex::new(insts.iter().map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..jobs.max(1).min(insts.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, AtomicOrdering::Relaxed);
                let Some(&inst) = insts.get(i) else { break };
                let r = bench_one(inst, order.clone(), &strat, opts.stats);
                results.lock().unwrap()[i] = Some(r);
            });
        }
    });
    if opts.format == Format::Text {
        writeln!(
            out,
            "{:<10} {:>5} {:>5} {:>6} {:>7} {:>9}",
            "instance", "vars", "eqs", "basis", "verdict", "seconds"
        )?;
    }
    for r in results.into_inner().unwrap().into_iter().flatten() {
        let rep = r?;
        match opts.format {
            Format::Json => writeln!(out, "{}", rep.json())?,
            Format::Text => writeln!(
                out,
                "{:<10} {:>5} {:>5} {:>6} {:>7} {:>9.3}",
                rep.instance,
                rep.vars,
                rep.eqs,
                rep.basis_size.unwrap_or(0),
                rep.verdict.unwrap_or("-"),
                rep.seconds
            )?,
        }
    }
    Ok(0)
}
