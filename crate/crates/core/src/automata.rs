//! Deterministic automata, their transition semigroups, and the induced
//! dynamics on probability distributions.

use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::semigroup::FiniteSemigroup;
use crate::stochastic::matrix::{convolve, Distribution, StochasticMatrix};
use crate::stochastic::rational::{format_rational, parse_rational, Rational};
use crate::transformation::Transformation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeterministicAutomaton {
    pub states: Vec<String>,
    pub alphabet: Vec<String>,
    /// `delta[x][a]` is the state reached from `x` on letter `a`.
    pub delta: Vec<Vec<usize>>,
}

impl DeterministicAutomaton {
    pub fn new(states: Vec<String>, alphabet: Vec<String>, delta: Vec<Vec<usize>>) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::ZeroDegree);
        }
        if alphabet.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        if delta.len() != states.len() {
            return Err(Error::Parse(format!("delta: expected {} rows, found {}", states.len(), delta.len())));
        }
        for (x, row) in delta.iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(Error::Parse(format!(
                    "delta[{x}]: expected {} entries, found {}",
                    alphabet.len(),
                    row.len()
                )));
            }
            if let Some(a) = row.iter().position(|&y| y >= states.len()) {
                return Err(Error::Parse(format!("delta[{x}][{a}]: state {} out of range", row[a])));
            }
        }
        Ok(Self { states, alphabet, delta })
    }

    /// Automaton whose letters act by the given maps; states and letters
    /// are named by their indices.
    pub fn from_transformations(letters: &[Transformation]) -> Result<Self> {
        let n = letters.first().ok_or(Error::EmptyAlphabet)?.degree();
        let delta = (0..n).map(|x| letters.iter().map(|t| t.apply(x)).collect()).collect();
        Self::new(
            (0..n).map(|i| i.to_string()).collect(),
            (0..letters.len()).map(|i| format!("a{i}")).collect(),
            delta,
        )
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_letters(&self) -> usize {
        self.alphabet.len()
    }

    pub fn step(&self, x: usize, a: usize) -> usize {
        self.delta[x][a]
    }

    pub fn letter_map(&self, a: usize) -> Transformation {
        Transformation::new((0..self.num_states()).map(|x| self.delta[x][a]).collect())
            .expect("delta entries are in range")
    }

    pub fn letter_index(&self, name: &str) -> Option<usize> {
        self.alphabet.iter().position(|a| a == name)
    }
}

/// An automaton together with a finite set of letter distributions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbabilisticInstance {
    pub automaton: DeterministicAutomaton,
    pub omega: Vec<Distribution>,
}

fn field_error(path: &str, what: &str) -> Error {
    Error::Parse(format!("{path}: {what}"))
}

fn string_list(v: &Value, path: &str) -> Result<Vec<String>> {
    let arr = v.as_array().ok_or_else(|| field_error(path, "expected an array of names"))?;
    arr.iter()
        .enumerate()
        .map(|(i, x)| match x {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            _ => Err(field_error(&format!("{path}[{i}]"), "expected a name")),
        })
        .collect()
}

impl ProbabilisticInstance {
    /// Parses `{"states", "alphabet", "delta", "omega"}`; `omega` is optional.
    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
        let obj = v.as_object().ok_or_else(|| field_error("$", "expected an object"))?;
        for key in obj.keys() {
            if !["states", "alphabet", "delta", "omega"].contains(&key.as_str()) {
                return Err(field_error(key, "unknown field"));
            }
        }
        let get = |k: &str| obj.get(k).ok_or_else(|| field_error(k, "missing field"));
        let states = string_list(get("states")?, "states")?;
        let alphabet = string_list(get("alphabet")?, "alphabet")?;
        let rows = get("delta")?.as_array().ok_or_else(|| field_error("delta", "expected an array of rows"))?;
        if rows.len() != states.len() {
            return Err(field_error("delta", &format!("expected {} rows, found {}", states.len(), rows.len())));
        }
        let mut delta = Vec::with_capacity(rows.len());
        for (x, row) in rows.iter().enumerate() {
            let path = format!("delta[{x}]");
            let row = row.as_array().ok_or_else(|| field_error(&path, "expected an array of state indices"))?;
            if row.len() != alphabet.len() {
                return Err(field_error(
                    &path,
                    &format!("expected {} entries, found {}", alphabet.len(), row.len()),
                ));
            }
            let mut out = Vec::with_capacity(row.len());
            for (a, y) in row.iter().enumerate() {
                let path = format!("delta[{x}][{a}]");
                let y = y.as_u64().ok_or_else(|| field_error(&path, "expected a state index"))? as usize;
                if y >= states.len() {
                    return Err(field_error(&path, &format!("state {y} out of range")));
                }
                out.push(y);
            }
            delta.push(out);
        }
        let automaton = DeterministicAutomaton::new(states, alphabet, delta)?;
        let mut omega = Vec::new();
        if let Some(list) = obj.get("omega") {
            let list = list.as_array().ok_or_else(|| field_error("omega", "expected an array"))?;
            for (k, w) in list.iter().enumerate() {
                let path = format!("omega[{k}]");
                let w = w.as_object().ok_or_else(|| field_error(&path, "expected a letter-to-weight object"))?;
                let mut weights = Vec::new();
                for (letter, weight) in w {
                    let p = format!("{path}.{letter}");
                    let a = automaton.letter_index(letter).ok_or_else(|| field_error(&p, "unknown letter"))?;
                    let text = match weight {
                        Value::String(s) => s.clone(),
                        Value::Number(n) => n.to_string(),
                        _ => return Err(field_error(&p, "expected a fraction string")),
                    };
                    weights.push((a, parse_rational(&text).map_err(|e| field_error(&p, &e.to_string()))?));
                }
                let d = Distribution::new(automaton.num_letters(), weights)
                    .map_err(|e| field_error(&path, &e.to_string()))?;
                omega.push(d);
            }
        }
        Ok(Self { automaton, omega })
    }

    pub fn to_json(&self) -> Value {
        let a = &self.automaton;
        let omega: Vec<Value> = self
            .omega
            .iter()
            .map(|d| {
                let m: serde_json::Map<String, Value> =
                    d.support().map(|(i, w)| (a.alphabet[i].clone(), Value::String(format_rational(w)))).collect();
                Value::Object(m)
            })
            .collect();
        json!({ "states": a.states, "alphabet": a.alphabet, "delta": a.delta, "omega": omega })
    }
}

/// The semigroup generated by the letter maps, with each letter's element.
#[derive(Clone, Debug)]
pub struct TransitionSemigroup {
    pub semigroup: FiniteSemigroup,
    pub letter_map: Vec<usize>,
}

impl TransitionSemigroup {
    pub fn degree(&self) -> usize {
        self.semigroup.degree()
    }

    /// Pushes a letter distribution forward to the semigroup, adding the
    /// masses of letters that act identically.
    pub fn pushforward(&self, mu: &Distribution) -> Result<Distribution> {
        if mu.base() != self.letter_map.len() {
            return Err(Error::Shape("letter distribution has the wrong alphabet size".into()));
        }
        mu.pushforward(self.semigroup.len(), |a| self.letter_map[a])
    }
}

pub fn transition_semigroup(aut: &DeterministicAutomaton) -> Result<TransitionSemigroup> {
    transition_semigroup_bounded(aut, crate::semigroup::DEFAULT_SIZE_BOUND)
}

pub fn transition_semigroup_bounded(aut: &DeterministicAutomaton, bound: usize) -> Result<TransitionSemigroup> {
    if aut.num_letters() == 0 {
        return Err(Error::EmptyAlphabet);
    }
    let letters: Vec<Transformation> = (0..aut.num_letters()).map(|a| aut.letter_map(a)).collect();
    let semigroup = FiniteSemigroup::generate_bounded(aut.num_states(), &letters, bound)?;
    let letter_map = letters.iter().map(|t| semigroup.index_of(t).expect("letters generate")).collect();
    Ok(TransitionSemigroup { semigroup, letter_map })
}

/// `sum over x, a of pi(x) mu(a) delta(x, a)`.
pub fn pdelta(aut: &DeterministicAutomaton, pi: &Distribution, mu: &Distribution) -> Result<Distribution> {
    if pi.base() != aut.num_states() || mu.base() != aut.num_letters() {
        return Err(Error::Shape("distribution sizes do not match the automaton".into()));
    }
    let mut out = Vec::new();
    for (x, p) in pi.support() {
        for (a, m) in mu.support() {
            out.push((aut.step(x, a), p * m));
        }
    }
    Distribution::new(aut.num_states(), out)
}

/// `pi mu = sum over x s = y of pi(x) mu(s) y`.
pub fn act(s: &FiniteSemigroup, pi: &Distribution, mu: &Distribution) -> Result<Distribution> {
    if pi.base() != s.degree() || mu.base() != s.len() {
        return Err(Error::Shape("distribution sizes do not match the semigroup".into()));
    }
    let mut out = Vec::new();
    for (x, p) in pi.support() {
        for (t, m) in mu.support() {
            out.push((s.element(t).apply(x), p * m));
        }
    }
    Distribution::new(s.degree(), out)
}

/// Folds `pdelta` over a word of indices into `omega`.
pub fn run_instance(inst: &ProbabilisticInstance, pi0: &Distribution, word: &[usize]) -> Result<Distribution> {
    word.iter().try_fold(pi0.clone(), |pi, &k| {
        let mu = inst.omega.get(k).ok_or(Error::IndexOutOfRange { index: k, len: inst.omega.len() })?;
        pdelta(&inst.automaton, &pi, mu)
    })
}

/// Powers `mu, mu*mu, ...` of a distribution on the semigroup until one
/// repeats exactly. Returns `(first, period)` with `mu^(first + period) =
/// mu^first`, or `None` if no repeat occurs within `max_steps` powers.
pub fn convolution_period(s: &FiniteSemigroup, mu: &Distribution, max_steps: usize) -> Result<Option<(usize, usize)>> {
    let mut seen: HashMap<Distribution, usize> = HashMap::new();
    let mut power = mu.clone();
    for k in 1..=max_steps {
        if let Some(&j) = seen.get(&power) {
            return Ok(Some((j, k - j)));
        }
        seen.insert(power.clone(), k);
        power = convolve(s, &power, mu)?;
    }
    Ok(None)
}

/// Support semigroup of a set of stochastic matrices whose supports are
/// row-monomial, with each matrix expressed as a distribution over it.
pub fn support_semigroup(mats: &[StochasticMatrix]) -> Result<(TransitionSemigroup, Vec<Distribution>)> {
    let mut maps = Vec::with_capacity(mats.len());
    for (k, m) in mats.iter().enumerate() {
        match m.support_map() {
            Some(t) => maps.push(t),
            None => {
                let pattern = m.support_pattern();
                let row = pattern.iter().position(|r| r.iter().filter(|&&b| b).count() != 1).unwrap_or(0);
                let cols: Vec<usize> = (0..pattern[row].len()).filter(|&j| pattern[row][j]).collect();
                return Err(Error::NotRowMonomial(format!("matrix {k} (row {row} has support {cols:?})")));
            }
        }
    }
    let n = mats.first().ok_or(Error::NoGenerators)?.size();
    let letters: Vec<String> = (0..mats.len()).map(|k| format!("m{k}")).collect();
    let delta = (0..n).map(|x| maps.iter().map(|t| t.apply(x)).collect()).collect();
    let aut = DeterministicAutomaton::new((0..n).map(|i| i.to_string()).collect(), letters, delta)?;
    let ts = transition_semigroup(&aut)?;
    let dists: Vec<Distribution> = (0..mats.len()).map(|k| Distribution::point(ts.semigroup.len(), ts.letter_map[k])).collect();
    for (k, (m, d)) in mats.iter().zip(&dists).enumerate() {
        if crate::stochastic::matrix_of(&ts.semigroup, d)? != *m {
            return Err(Error::Invariant(format!("matrix {k} is not reproduced by its support")));
        }
    }
    Ok((ts, dists))
}

/// Letter distribution given by `name -> weight` pairs.
pub fn letter_distribution(aut: &DeterministicAutomaton, weights: &[(&str, Rational)]) -> Result<Distribution> {
    let mut pairs = Vec::new();
    for (name, w) in weights {
        let a = aut.letter_index(name).ok_or_else(|| Error::Parse(format!("unknown letter '{name}'")))?;
        pairs.push((a, w.clone()));
    }
    Distribution::new(aut.num_letters(), pairs)
}

/// Maps each letter name to its weight, for reporting.
pub fn describe(aut: &DeterministicAutomaton, mu: &Distribution) -> BTreeMap<String, String> {
    mu.support().map(|(a, w)| (aut.alphabet[a].clone(), format_rational(w))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stochastic::rational::{frac, one, zero};

    fn flip_flop() -> DeterministicAutomaton {
        DeterministicAutomaton::new(
            vec!["0".into(), "1".into()],
            vec!["reset0".into(), "reset1".into(), "id".into()],
            vec![vec![0, 1, 0], vec![0, 1, 1]],
        )
        .unwrap()
    }

    #[test]
    fn closures() {
        assert_eq!(transition_semigroup(&flip_flop()).unwrap().semigroup.len(), 3);
        let toggle = DeterministicAutomaton::from_transformations(&[Transformation::cycle(2)]).unwrap();
        assert_eq!(transition_semigroup(&toggle).unwrap().semigroup.len(), 2);
        let f3 = DeterministicAutomaton::from_transformations(&[
            Transformation::cycle(3),
            Transformation::transposition(3, 0, 1),
            Transformation::new(vec![0, 0, 2]).unwrap(),
        ])
        .unwrap();
        assert_eq!(transition_semigroup(&f3).unwrap().semigroup.len(), 27);
    }

    #[test]
    fn pdelta_examples() {
        let aut = flip_flop();
        let half = Distribution::uniform(2, &[0, 1]).unwrap();
        let resets = letter_distribution(&aut, &[("reset0", frac(1, 2)), ("reset1", frac(1, 2))]).unwrap();
        assert_eq!(pdelta(&aut, &half, &resets).unwrap(), half);
        let id = Distribution::point(3, 2);
        let pi = Distribution::new(2, [(0, frac(1, 3)), (1, frac(2, 3))]).unwrap();
        assert_eq!(pdelta(&aut, &pi, &id).unwrap(), pi);
        assert_eq!(pdelta(&aut, &Distribution::point(2, 0), &Distribution::point(3, 1)).unwrap(), Distribution::point(2, 1));
    }

    #[test]
    fn act_agrees_with_matrix() {
        let ts = transition_semigroup(&flip_flop()).unwrap();
        let s = &ts.semigroup;
        let pi = Distribution::new(2, [(0, frac(1, 4)), (1, frac(3, 4))]).unwrap();
        let mu = Distribution::new(3, [(0, frac(1, 2)), (1, frac(1, 3)), (2, frac(1, 6))]).unwrap();
        let m = crate::stochastic::matrix_of(s, &mu).unwrap();
        assert_eq!(act(s, &pi, &mu).unwrap().to_vector(), m.apply_row(&pi.to_vector()));
    }

    #[test]
    fn run_of_flip_flop() {
        let aut = flip_flop();
        let resets = letter_distribution(&aut, &[("reset0", frac(1, 2)), ("reset1", frac(1, 2))]).unwrap();
        let inst = ProbabilisticInstance { automaton: aut, omega: vec![resets] };
        let start = Distribution::point(2, 0);
        assert_eq!(run_instance(&inst, &start, &[]).unwrap(), start);
        assert_eq!(run_instance(&inst, &start, &[0]).unwrap(), Distribution::uniform(2, &[0, 1]).unwrap());
        assert!(matches!(run_instance(&inst, &start, &[1]), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn json_round_trip_and_diagnostics() {
        let text = r#"{"states":["p","q"],"alphabet":["a","b"],"delta":[[1,0],[0,0]],"omega":[{"a":"1/3","b":"2/3"}]}"#;
        let inst = ProbabilisticInstance::from_json(text).unwrap();
        assert_eq!(inst.omega[0].weight(1), frac(2, 3));
        let again = ProbabilisticInstance::from_json(&inst.to_json().to_string()).unwrap();
        assert_eq!(again, inst);
        let bad = r#"{"states":["p","q"],"alphabet":["a"],"delta":[[1],[0,1]]}"#;
        let err = ProbabilisticInstance::from_json(bad).unwrap_err().to_string();
        assert!(err.contains("delta[1]"), "{err}");
    }

    #[test]
    fn supports() {
        let m = |rows: Vec<Vec<Rational>>| StochasticMatrix::new(rows).unwrap();
        let (o, z) = (one, zero);
        let a = m(vec![vec![o(), z(), z()], vec![z(), z(), o()], vec![z(), z(), o()]]);
        let b = m(vec![vec![z(), z(), o()], vec![z(), o(), z()], vec![z(), z(), o()]]);
        let c = m(vec![vec![z(), z(), o()]; 3]);
        let (ts, dists) = support_semigroup(&[a, b, c]).unwrap();
        assert_eq!(ts.semigroup.len(), 3);
        assert_eq!(dists.len(), 3);
        let bad = m(vec![vec![frac(1, 2), frac(1, 2)], vec![z(), o()]]);
        let err = support_semigroup(&[bad]).unwrap_err();
        assert_eq!(err, Error::NotRowMonomial("matrix 0 (row 0 has support [0, 1])".into()));
    }

    #[test]
    fn exact_period() {
        let ts = transition_semigroup(&DeterministicAutomaton::from_transformations(&[Transformation::cycle(2)]).unwrap()).unwrap();
        let mu = Distribution::point(2, ts.letter_map[0]);
        assert_eq!(convolution_period(&ts.semigroup, &mu, 10).unwrap(), Some((1, 2)));
    }
}
