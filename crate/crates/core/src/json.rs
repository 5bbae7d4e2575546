//! JSON encoding of automata, transducers and tuple covers.
//!
//! Automata are objects `{"type", "alphabet", "states", "initial",
//! "accepting", "transitions"}`. Letter transitions are `[from, "sym", to]`;
//! transducer transitions are `[from, "in", "out", to]` with `""` standing
//! for the empty word. A transducer whose output alphabet differs from its
//! input alphabet also carries `"output_alphabet"`.

use serde::{Deserialize, Serialize};

use crate::alphabet::{Letter, OrderedAlphabet};
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::minimal::{LassoTriple, TupleCover};
use crate::nfa::Nfa;
use crate::transducer::{Transducer, Transition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Dfa,
    Nfa,
    Transducer,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum RawTransition {
    Letter(usize, String, usize),
    Io(usize, String, String, usize),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAutomaton {
    #[serde(rename = "type")]
    kind: Kind,
    alphabet: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    output_alphabet: Option<Vec<String>>,
    states: usize,
    initial: usize,
    accepting: Vec<usize>,
    transitions: Vec<RawTransition>,
}

/// Any automaton that can be read from JSON.
#[derive(Clone, Debug)]
pub enum Automaton {
    Dfa(Dfa),
    Nfa(Nfa),
    Transducer(Transducer),
}

impl Automaton {
    pub fn kind(&self) -> Kind {
        match self {
            Automaton::Dfa(_) => Kind::Dfa,
            Automaton::Nfa(_) => Kind::Nfa,
            Automaton::Transducer(_) => Kind::Transducer,
        }
    }
}

fn symbol(alphabet: &OrderedAlphabet, s: &str) -> Result<Letter> {
    alphabet
        .letter(s)
        .ok_or_else(|| Error::UnknownSymbol(s.to_string()))
}

fn optional_symbol(alphabet: &OrderedAlphabet, s: &str) -> Result<Option<Letter>> {
    if s.is_empty() {
        Ok(None)
    } else {
        symbol(alphabet, s).map(Some)
    }
}

pub fn parse_automaton(text: &str) -> Result<Automaton> {
    let raw: RawAutomaton = serde_json::from_str(text)?;
    let alphabet = OrderedAlphabet::new(raw.alphabet.iter().cloned())?;
    if raw.kind != Kind::Transducer && raw.output_alphabet.is_some() {
        return Err(Error::Format(
            "only transducers have an output alphabet".into(),
        ));
    }
    match raw.kind {
        Kind::Dfa => {
            let n = raw.states;
            if n == 0 {
                return Err(Error::NoStates);
            }
            let mut delta = vec![vec![None; alphabet.len()]; n];
            for t in &raw.transitions {
                let RawTransition::Letter(p, a, q) = t else {
                    return Err(Error::Format(
                        "DFA transitions are [from, symbol, to]".into(),
                    ));
                };
                if *p >= n {
                    return Err(Error::StateOutOfRange {
                        state: *p,
                        count: n,
                    });
                }
                let a_id = symbol(&alphabet, a)?;
                if delta[*p][a_id].replace(*q).is_some() {
                    return Err(Error::NondeterministicDfa {
                        state: *p,
                        symbol: a.clone(),
                    });
                }
            }
            let delta = delta
                .into_iter()
                .enumerate()
                .map(|(p, row)| {
                    row.into_iter()
                        .enumerate()
                        .map(|(a, q)| {
                            q.ok_or_else(|| Error::IncompleteDfa {
                                state: p,
                                symbol: alphabet.symbol(a).to_string(),
                            })
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Automaton::Dfa(Dfa::new(
                alphabet,
                raw.initial,
                raw.accepting,
                delta,
            )?))
        }
        Kind::Nfa => {
            let transitions = raw
                .transitions
                .iter()
                .map(|t| match t {
                    RawTransition::Letter(p, a, q) => Ok((*p, symbol(&alphabet, a)?, *q)),
                    RawTransition::Io(..) => Err(Error::Format(
                        "NFA transitions are [from, symbol, to]".into(),
                    )),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Automaton::Nfa(Nfa::new(
                alphabet,
                raw.states,
                raw.initial,
                raw.accepting,
                transitions,
            )?))
        }
        Kind::Transducer => {
            let output = match &raw.output_alphabet {
                Some(symbols) => OrderedAlphabet::new(symbols.iter().cloned())?,
                None => alphabet.clone(),
            };
            let transitions = raw
                .transitions
                .iter()
                .map(|t| match t {
                    RawTransition::Io(p, a, b, q) => Ok(Transition {
                        from: *p,
                        input: optional_symbol(&alphabet, a)?,
                        output: optional_symbol(&output, b)?,
                        to: *q,
                    }),
                    RawTransition::Letter(..) => Err(Error::Format(
                        "transducer transitions are [from, input, output, to]".into(),
                    )),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Automaton::Transducer(Transducer::new(
                alphabet,
                output,
                raw.states,
                raw.initial,
                raw.accepting,
                transitions,
            )?))
        }
    }
}

pub fn parse_dfa(text: &str) -> Result<Dfa> {
    match parse_automaton(text)? {
        Automaton::Dfa(d) => Ok(d),
        other => Err(Error::Format(format!(
            "expected a dfa, found {:?}",
            other.kind()
        ))),
    }
}

fn render(raw: &RawAutomaton) -> String {
    serde_json::to_string_pretty(raw).expect("plain data serializes")
}

pub fn dfa_to_json(dfa: &Dfa) -> String {
    let a = dfa.alphabet();
    render(&RawAutomaton {
        kind: Kind::Dfa,
        alphabet: a.symbols().to_vec(),
        output_alphabet: None,
        states: dfa.state_count(),
        initial: dfa.initial(),
        accepting: dfa.accepting_states().collect(),
        transitions: (0..dfa.state_count())
            .flat_map(|q| {
                a.letters()
                    .map(move |x| RawTransition::Letter(q, a.symbol(x).to_string(), dfa.next(q, x)))
            })
            .collect(),
    })
}

pub fn nfa_to_json(nfa: &Nfa) -> String {
    let a = nfa.alphabet();
    render(&RawAutomaton {
        kind: Kind::Nfa,
        alphabet: a.symbols().to_vec(),
        output_alphabet: None,
        states: nfa.state_count(),
        initial: nfa.initial(),
        accepting: (0..nfa.state_count())
            .filter(|&q| nfa.is_accepting(q))
            .collect(),
        transitions: nfa
            .transitions()
            .map(|(p, x, q)| RawTransition::Letter(p, a.symbol(x).to_string(), q))
            .collect(),
    })
}

pub fn transducer_to_json(t: &Transducer) -> String {
    let (inp, out) = (t.input_alphabet(), t.output_alphabet());
    let show = |alphabet: &OrderedAlphabet, x: Option<Letter>| {
        x.map_or_else(String::new, |x| alphabet.symbol(x).to_string())
    };
    render(&RawAutomaton {
        kind: Kind::Transducer,
        alphabet: inp.symbols().to_vec(),
        output_alphabet: (inp != out).then(|| out.symbols().to_vec()),
        states: t.state_count(),
        initial: t.initial(),
        accepting: (0..t.state_count())
            .filter(|&q| t.is_accepting(q))
            .collect(),
        transitions: t
            .transitions()
            .iter()
            .map(|tr| RawTransition::Io(tr.from, show(inp, tr.input), show(out, tr.output), tr.to))
            .collect(),
    })
}

pub fn automaton_to_json(a: &Automaton) -> String {
    match a {
        Automaton::Dfa(d) => dfa_to_json(d),
        Automaton::Nfa(n) => nfa_to_json(n),
        Automaton::Transducer(t) => transducer_to_json(t),
    }
}

#[derive(Serialize)]
struct RawTriple {
    x: String,
    y: String,
    z: String,
}

#[derive(Serialize)]
struct RawCover {
    n: usize,
    triples: Vec<RawTriple>,
}

/// Words are concatenated symbols, or space-separated symbols when some
/// symbol is longer than one character.
pub fn cover_to_json(cover: &TupleCover) -> String {
    let a = cover.alphabet();
    let sep = if a.is_single_char() { "" } else { " " };
    let word = |w: &[Letter]| a.render(w, sep);
    let raw = RawCover {
        n: cover.n(),
        triples: cover
            .triples()
            .iter()
            .map(|LassoTriple { x, y, z }| RawTriple {
                x: word(x),
                y: word(y),
                z: word(z),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&raw).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dfa::words_up_to;

    #[test]
    fn dfa_round_trip() {
        let d = Dfa::from_fn(
            OrderedAlphabet::digits(2),
            3,
            1,
            |q| q == 2,
            |q, a| (q + a) % 3,
        );
        let back = parse_dfa(&dfa_to_json(&d)).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn field_names_and_order() {
        let text = dfa_to_json(&Dfa::universal(OrderedAlphabet::digits(1)));
        let keys: Vec<usize> = [
            "\"type\"",
            "\"alphabet\"",
            "\"states\"",
            "\"initial\"",
            "\"accepting\"",
            "\"transitions\"",
        ]
        .iter()
        .map(|k| text.find(k).unwrap())
        .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert!(text.contains("\"dfa\""));
    }

    #[test]
    fn malformed_inputs() {
        let incomplete = r#"{"type":"dfa","alphabet":["a","b"],"states":1,"initial":0,"accepting":[],"transitions":[[0,"a",0]]}"#;
        assert!(matches!(
            parse_dfa(incomplete),
            Err(Error::IncompleteDfa { .. })
        ));
        let unknown = r#"{"type":"dfa","alphabet":["a"],"states":1,"initial":0,"accepting":[],"transitions":[[0,"c",0]]}"#;
        assert!(matches!(parse_dfa(unknown), Err(Error::UnknownSymbol(_))));
        let twice = r#"{"type":"dfa","alphabet":["a"],"states":1,"initial":0,"accepting":[],"transitions":[[0,"a",0],[0,"a",0]]}"#;
        assert!(matches!(
            parse_dfa(twice),
            Err(Error::NondeterministicDfa { .. })
        ));
        assert!(matches!(parse_dfa("{"), Err(Error::Json(_))));
        let eps = r#"{"type":"nfa","alphabet":["a"],"states":1,"initial":0,"accepting":[],"transitions":[[0,"",0]]}"#;
        assert!(parse_automaton(eps).is_err());
    }

    #[test]
    fn transducer_round_trip() {
        let a = OrderedAlphabet::digits(2);
        let t = Transducer::new(
            a.clone(),
            a,
            2,
            0,
            [1],
            [
                Transition {
                    from: 0,
                    input: None,
                    output: Some(1),
                    to: 1,
                },
                Transition {
                    from: 1,
                    input: Some(0),
                    output: None,
                    to: 1,
                },
            ],
        )
        .unwrap();
        let text = transducer_to_json(&t);
        assert!(text.contains("\"\""));
        let Automaton::Transducer(back) = parse_automaton(&text).unwrap() else {
            panic!("kind changed");
        };
        for w in words_up_to(2, 4) {
            assert_eq!(back.run(&w), t.run(&w));
        }
    }

    #[test]
    fn cover_format() {
        let c = TupleCover::new(
            OrderedAlphabet::digits(2),
            3,
            vec![LassoTriple::new(vec![1], vec![0, 1], vec![])],
        );
        let v: serde_json::Value = serde_json::from_str(&cover_to_json(&c)).unwrap();
        assert_eq!(v["n"], 3);
        assert_eq!(v["triples"][0]["y"], "01");
    }
}
