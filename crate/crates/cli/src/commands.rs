use std::io::Write;
use std::path::Path;

use esgame_core::algebra::{lift, par, pentagon, snake_check, tensor};
use esgame_core::es::{find_isomorphism, parallel, project, project_esp, IsoQuery};
use esgame_core::games::copycat;
use esgame_core::interaction::{compose, interaction, Pullback};
use esgame_core::laws::{
    check_strategy, is_courteous, is_discrete_fibration, is_receptive, FibrationOrder,
};
use esgame_core::{Esp, EventSet, EventStructure, PreStrategy};
use esgame_io::dot::{configurations_dot, es_dot, esp_dot, strategy_dot};
use esgame_io::gen::{gen_esp, gen_prestrategy, gen_strategy_family, EspFlags, PreFlags};
use esgame_io::{parse_path, serialize_value, Value};

use crate::{suite, CliError, Command, Output, Status};

type CmdResult = Result<Status, CliError>;

pub(crate) fn execute(cmd: Command) -> CmdResult {
    match cmd {
        Command::Validate { file, dot } => validate(&file, dot.as_deref()),
        Command::Configs { file, covers, dot } => configs(&file, covers, dot.as_deref()),
        Command::Parallel { left, right, out } => {
            let v = match (load(&left)?, load(&right)?) {
                (Value::Esp(a), Value::Esp(b)) => Value::Esp(par(&a, &b)),
                (a, b) => Value::Structure(parallel(&structure_of(&a)?, &structure_of(&b)?).0),
            };
            emit(&out, "parallel", &v)
        }
        Command::Dual { file, out } => {
            let a = esp(&file)?;
            emit(&out, "dual", &Value::Esp(a.dual()))
        }
        Command::Project { file, keep, out } => {
            let v = match load(&file)? {
                Value::Esp(a) => {
                    let keep = a.lookup_set(keep.iter().map(String::as_str))?;
                    Value::Esp(project_esp(&a, &keep)?.structure)
                }
                other => {
                    let s = structure_of(&other)?;
                    let keep = s.lookup_set(keep.iter().map(String::as_str))?;
                    Value::Structure(project(&s, &keep)?.structure)
                }
            };
            emit(&out, "projection", &v)
        }
        Command::Copycat { game, out } => {
            emit(&out, "copycat", &Value::Strategy(copycat(&esp(&game)?)?))
        }
        Command::Interact {
            left,
            right,
            dot,
            out,
        } => interact(&left, &right, dot.as_deref(), &out),
        Command::Compose { sigma, tau, out } => {
            let c = compose(&strategy(&sigma)?, &strategy(&tau)?)?;
            emit(&out, "composite", &Value::Strategy(c.strategy().clone()))
        }
        Command::Check {
            file,
            receptive,
            courteous,
            fibration,
            strategy: _,
        } => {
            let sigma = strategy(&file)?;
            if receptive {
                check_receptive(&sigma)
            } else if courteous {
                Ok(check_courteous(&sigma))
            } else if let Some(order) = fibration {
                check_fibration(&sigma, order)
            } else {
                check_all(&sigma)
            }
        }
        Command::Iso { left, right, over } => iso(&left, &right, over.as_deref()),
        Command::Tensor { left, right, out } => {
            let t = tensor(&strategy(&left)?, &strategy(&right)?)?;
            emit(&out, "tensor", &Value::Strategy(t))
        }
        Command::Lift { map, out } => match load(&map)? {
            Value::EspMap {
                source,
                target,
                map,
            } => emit(
                &out,
                "lift",
                &Value::Strategy(lift(&source, &target, &map)?),
            ),
            other => Err(CliError::Usage(format!(
                "expected a map between esps, found {}",
                other.kind()
            ))),
        },
        Command::Snake { game } => {
            let s = snake_check(&esp(&game)?)?;
            println!(
                "first snake:  {}",
                if s.first_iso.is_some() {
                    "holds"
                } else {
                    "fails"
                }
            );
            println!(
                "second snake: {}",
                if s.second_iso.is_some() {
                    "holds"
                } else {
                    "fails"
                }
            );
            Ok(status(s.holds()))
        }
        Command::Pentagon { strategies } => {
            let s = strategies
                .iter()
                .map(|p| strategy(p))
                .collect::<Result<Vec<_>, _>>()?;
            let p = pentagon(&s[0], &s[1], &s[2], &s[3])?;
            if p.holds() {
                println!("pentagon holds");
            } else {
                println!(
                    "pentagon fails: {:?} against {:?}",
                    p.top.image(),
                    p.bottom.image()
                );
            }
            Ok(status(p.holds()))
        }
        Command::Gen {
            seed,
            events,
            prestrategy,
            family,
            size,
            out,
        } => {
            let v = if let Some(n) = events {
                Value::Esp(gen_esp(seed, n, &EspFlags::default())?)
            } else if let Some(game) = prestrategy {
                Value::Strategy(gen_prestrategy(seed, &esp(&game)?, &PreFlags::default())?)
            } else if family {
                Value::Strategy(gen_strategy_family(seed, size)?)
            } else {
                return Err(CliError::Usage(
                    "gen needs one of --events, --prestrategy or --family".into(),
                ));
            };
            emit(&out, &format!("gen-{seed}"), &v)
        }
        Command::Laws {
            seed,
            trials,
            max_events,
        } => {
            let reports = suite::standard(seed, trials, max_events);
            for r in &reports {
                println!("{r}");
            }
            Ok(status(reports.iter().all(suite::LawReport::passed)))
        }
    }
}

fn status(holds: bool) -> Status {
    if holds {
        Status::Holds
    } else {
        Status::Fails
    }
}

fn load(path: &Path) -> Result<Value, CliError> {
    Ok(parse_path(path)?)
}

fn structure_of(v: &Value) -> Result<EventStructure, CliError> {
    match v {
        Value::Structure(s) => Ok(s.clone()),
        Value::Esp(a) => Ok(a.structure().clone()),
        other => Err(CliError::Usage(format!(
            "expected an event structure, found {}",
            other.kind()
        ))),
    }
}

fn esp(path: &Path) -> Result<Esp, CliError> {
    match load(path)? {
        Value::Esp(a) => Ok(a),
        // No events, so no polarities to miss.
        Value::Structure(s) if s.is_empty() => Ok(Esp::empty()),
        other => Err(CliError::Usage(format!(
            "{}: expected an esp, found {}",
            path.display(),
            other.kind()
        ))),
    }
}

fn strategy(path: &Path) -> Result<PreStrategy, CliError> {
    match load(path)? {
        Value::Strategy(s) => Ok(s),
        other => Err(CliError::Usage(format!(
            "{}: expected a pre-strategy, found {}",
            path.display(),
            other.kind()
        ))),
    }
}

fn write_to(path: &Path, text: &str) -> Result<(), CliError> {
    let err = |e: std::io::Error| CliError::Write {
        path: path.display().to_string(),
        message: e.to_string(),
    };
    if path == Path::new("-") {
        let mut out = std::io::stdout().lock();
        out.write_all(text.as_bytes()).map_err(err)?;
        out.flush().map_err(err)
    } else {
        std::fs::write(path, text).map_err(err)
    }
}

fn emit(out: &Output, name: &str, v: &Value) -> CmdResult {
    write_to(&out.output, &serialize_value(name, v))?;
    Ok(Status::Holds)
}

fn dot_of(name: &str, v: &Value) -> String {
    match v {
        Value::Structure(s) => es_dot(name, s),
        Value::Esp(a) => esp_dot(name, a),
        Value::Map { source, .. } => es_dot(name, source),
        Value::EspMap { source, .. } => esp_dot(name, source),
        Value::Strategy(s) => strategy_dot(name, s),
    }
}

fn validate(file: &Path, dot: Option<&Path>) -> CmdResult {
    let v = load(file)?;
    match &v {
        Value::Structure(s) => println!("ok: event structure with {} events", s.len()),
        Value::Esp(a) => println!("ok: esp with {} events", a.len()),
        Value::Map { source, target, .. } => {
            println!("ok: map from {} to {} events", source.len(), target.len())
        }
        Value::EspMap { source, target, .. } => println!(
            "ok: esp map from {} to {} events",
            source.len(),
            target.len()
        ),
        Value::Strategy(s) => println!(
            "ok: pre-strategy with {} events on a game of {}",
            s.inner().len(),
            s.game().len()
        ),
    }
    if let Some(path) = dot {
        write_to(path, &dot_of("value", &v))?;
    }
    Ok(Status::Holds)
}

fn configs(file: &Path, covers: bool, dot: Option<&Path>) -> CmdResult {
    let s = match load(file)? {
        Value::Strategy(sigma) => sigma.inner().structure().clone(),
        other => structure_of(&other)?,
    };
    let c = s.configurations()?;
    let mut text = String::new();
    for x in c.iter() {
        text.push_str(&s.show(x));
        text.push('\n');
    }
    if covers {
        for cov in &c.covers {
            let (from, to) = (&c.configs[cov.from], &c.configs[cov.to]);
            text.push_str(&format!(
                "{} --{}--> {}\n",
                s.show(from),
                s.id(cov.event),
                s.show(to)
            ));
        }
    }
    write_to(Path::new("-"), &text)?;
    if let Some(path) = dot {
        write_to(path, &configurations_dot("configurations", &s, &c))?;
    }
    Ok(Status::Holds)
}

fn interact(left: &Path, right: &Path, dot: Option<&Path>, out: &Output) -> CmdResult {
    let structure = match (load(left)?, load(right)?) {
        (Value::Strategy(s), Value::Strategy(t)) => interaction(&s, &t)?.structure().clone(),
        (
            Value::Map {
                source: s,
                target: a,
                map: f,
            },
            Value::Map {
                source: t,
                target: b,
                map: g,
            },
        ) => {
            if a != b {
                return Err(CliError::Usage(
                    "the two maps must share their target".into(),
                ));
            }
            let g = if a.ids() == b.ids() {
                g
            } else {
                // Same structure, different index order.
                let to_a: Vec<usize> = (0..b.len())
                    .map(|j| a.lookup(b.id(j)))
                    .collect::<Result<_, _>>()?;
                esgame_core::EsMap::new(
                    g.image().iter().map(|j| j.map(|j| to_a[j])).collect(),
                    a.len(),
                )
            };
            Pullback::new(&s, &f, &t, &g)?.structure
        }
        (l, r) => {
            return Err(CliError::Usage(format!(
                "cannot interact {} with {}",
                l.kind(),
                r.kind()
            )));
        }
    };
    if let Some(path) = dot {
        write_to(path, &es_dot("interaction", &structure))?;
    }
    emit(out, "interaction", &Value::Structure(structure))
}

fn show(s: &EventStructure, x: &EventSet) -> String {
    s.show(x)
}

fn check_receptive(sigma: &PreStrategy) -> CmdResult {
    let v = is_receptive(sigma)?;
    match &v.counterexample {
        None => println!("receptive"),
        Some(f) => {
            let s = sigma.inner();
            let answers: Vec<&str> = f.answers.iter().map(|&e| s.id(e).as_str()).collect();
            println!(
                "not receptive: at {} the move {} has {} answers {:?}",
                show(s.structure(), &f.x),
                sigma.game().id(f.move_),
                answers.len(),
                answers
            );
        }
    }
    Ok(status(v.holds()))
}

fn check_courteous(sigma: &PreStrategy) -> Status {
    let v = is_courteous(sigma);
    match v.counterexample {
        None => println!("courteous"),
        Some((p, q)) => {
            let s = sigma.inner();
            println!(
                "not courteous: {}{} ⇢ {}{} is not sent to an immediate causal link",
                s.id(p),
                s.polarity(p),
                s.id(q),
                s.polarity(q)
            );
        }
    }
    status(v.holds())
}

fn check_fibration(sigma: &PreStrategy, order: FibrationOrder) -> CmdResult {
    let v = is_discrete_fibration(sigma, order)?;
    match &v.counterexample {
        None => println!("discrete fibration over the {order} order"),
        Some(f) => {
            let (s, g) = (sigma.inner().structure(), sigma.game().structure());
            let lifts: Vec<String> = f.lifts.iter().map(|l| show(s, l)).collect();
            println!(
                "not a discrete fibration over the {order} order: {} below the image of {} has {} lifts {:?}",
                show(g, &f.y),
                show(s, &f.x),
                lifts.len(),
                lifts
            );
        }
    }
    Ok(status(v.holds()))
}

fn check_all(sigma: &PreStrategy) -> CmdResult {
    let v = check_strategy(sigma)?;
    let yes = |b: bool| if b { "yes" } else { "no" };
    println!("receptive:          {}", yes(v.receptive.holds()));
    println!("courteous:          {}", yes(v.courteous.holds()));
    for (order, f) in &v.fibration {
        println!("{:<20}{}", format!("{order} fibration:"), yes(f.holds()));
    }
    println!("copycat invariant:  {}", yes(v.copycat_iso.is_some()));
    if !v.consistent() {
        println!("the characterisations disagree");
        return Ok(Status::Fails);
    }
    Ok(status(v.copycat_iso.is_some()))
}

fn print_iso(s: &EventStructure, t: &EventStructure, table: &[usize]) {
    let mut lines: Vec<String> = table
        .iter()
        .enumerate()
        .map(|(i, &j)| format!("{} -> {}", s.id(i), t.id(j)))
        .collect();
    lines.sort();
    println!("isomorphic");
    for l in lines {
        println!("  {l}");
    }
}

fn iso(left: &Path, right: &Path, over: Option<&Path>) -> CmdResult {
    let (l, r) = (load(left)?, load(right)?);
    let found = match (&l, &r) {
        (Value::Strategy(s), Value::Strategy(t)) => {
            if let Some(game) = over {
                let g = esp(game)?;
                if s.game() != &g || t.game() != &g {
                    return Err(CliError::Usage(
                        "both pre-strategies must be on the given game".into(),
                    ));
                }
            }
            if s.game() != t.game() {
                println!("not isomorphic: the games differ");
                return Ok(Status::Fails);
            }
            s.isomorphism(t)?.map(|m| {
                (
                    s.inner().structure().clone(),
                    t.inner().structure().clone(),
                    m,
                )
            })
        }
        (Value::Esp(a), Value::Esp(b)) if over.is_none() => {
            let q = IsoQuery::new(a.structure(), b.structure())
                .polarities(a.polarities(), b.polarities());
            find_isomorphism(&q).map(|m| (a.structure().clone(), b.structure().clone(), m))
        }
        (a, b) if over.is_none() => {
            let (a, b) = (structure_of(a)?, structure_of(b)?);
            find_isomorphism(&IsoQuery::new(&a, &b)).map(|m| (a.clone(), b.clone(), m))
        }
        _ => return Err(CliError::Usage("--over needs two pre-strategies".into())),
    };
    match found {
        Some((s, t, m)) => {
            print_iso(&s, &t, &m);
            Ok(Status::Holds)
        }
        None => {
            println!("not isomorphic: {} and {}", l.kind(), r.kind());
            Ok(Status::Fails)
        }
    }
}
