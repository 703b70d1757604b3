//! JSON instance, partition and graph formats.
//!
//! An instance looks like
//!
//! ```json
//! { "n": 4, "class": "aeg", "symmetric": true, "edges": [[0, 1], [1, 2]] }
//! { "n": 2, "class": "general", "valuations": [{"from": 0, "to": 1, "value": "3/2"}] }
//! ```
//!
//! General games default omitted pairs to 0. AEG and AFG instances give
//! either every ordered pair in `valuations` or the mutual friendships in
//! `edges`. Restricted games carry their `value_set` and list every pair.

use crate::error::{Error, Result};
use crate::game::{GameClass, HedonicGame};
use crate::graph::{GraphJson, SimpleGraph};
use crate::partition::{Partition, PartitionJson};
use crate::rational::Rational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalLit(#[serde(with = "crate::rational")] pub Rational);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValuationEntry {
    pub from: usize,
    pub to: usize,
    #[serde(with = "crate::rational")]
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceJson {
    pub n: usize,
    pub class: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetric: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valuations: Option<Vec<ValuationEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value_set: Option<Vec<RationalLit>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidGame(msg.into())
}

impl InstanceJson {
    pub fn into_game(self) -> Result<HedonicGame> {
        let n = self.n;
        if n == 0 {
            return Err(invalid("n must be at least 1"));
        }
        let class = match (self.class.as_str(), &self.value_set) {
            ("general", None) => GameClass::General,
            ("aeg", None) => GameClass::Aeg,
            ("afg", None) => GameClass::Afg,
            ("restricted", Some(set)) => {
                GameClass::Restricted(set.iter().map(|v| v.0.clone()).collect())
            }
            ("restricted", None) => return Err(invalid("restricted class needs a value_set")),
            ("general" | "aeg" | "afg", Some(_)) => {
                return Err(invalid("value_set is only allowed for restricted games"))
            }
            (other, _) => return Err(invalid(format!("unknown class `{other}`"))),
        };
        let friend_enemy = class.friend_enemy_values(n);
        let mut values: Vec<Option<Rational>> = vec![None; n * n];

        match (&self.edges, &self.valuations) {
            (Some(_), Some(_)) => return Err(invalid("give either edges or valuations, not both")),
            (Some(edges), None) => {
                let (enemy, friend) = friend_enemy
                    .clone()
                    .ok_or_else(|| invalid("edges are only allowed for aeg and afg"))?;
                let pairs: Vec<(usize, usize)> = edges.iter().map(|e| (e[0], e[1])).collect();
                let g = SimpleGraph::from_edges(n, &pairs)?;
                for i in 0..n {
                    for j in 0..n {
                        if i != j {
                            values[i * n + j] = Some(if g.has_edge(i, j) {
                                friend.clone()
                            } else {
                                enemy.clone()
                            });
                        }
                    }
                }
            }
            (None, entries) => {
                for e in entries.iter().flatten() {
                    if e.from >= n || e.to >= n || e.from == e.to {
                        return Err(invalid(format!(
                            "bad valuation pair ({}, {})",
                            e.from, e.to
                        )));
                    }
                    let slot = &mut values[e.from * n + e.to];
                    if slot.is_some() {
                        return Err(invalid(format!(
                            "duplicate valuation ({}, {})",
                            e.from, e.to
                        )));
                    }
                    *slot = Some(e.value.clone());
                }
                let missing = (0..n * n).find(|&k| k / n != k % n && values[k].is_none());
                if let Some(k) = missing {
                    if !matches!(class, GameClass::General) {
                        return Err(invalid(format!(
                            "{} instances must list every pair; ({}, {}) is missing",
                            class.name(),
                            k / n,
                            k % n
                        )));
                    }
                }
            }
        }
        let value = |i: usize, j: usize| values[i * n + j].clone().unwrap_or_else(Rational::zero);
        let game = match self.symmetric {
            Some(flag) => HedonicGame::with_declared_symmetry(n, class, flag, value)?,
            None => HedonicGame::from_fn(n, class, value)?,
        };
        match self.labels {
            Some(labels) => game.with_labels(labels),
            None => Ok(game),
        }
    }

    pub fn from_game(game: &HedonicGame) -> Self {
        let n = game.agent_count();
        let class = game.class();
        let mut out = InstanceJson {
            n,
            class: class.name().to_string(),
            symmetric: Some(game.is_symmetric()),
            valuations: None,
            edges: None,
            value_set: None,
            labels: game.labels().map(<[String]>::to_vec),
        };
        let pairs = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)));
        match class {
            GameClass::Aeg | GameClass::Afg if game.scan_symmetric() => {
                let g = game.mutual_friendship_graph().expect("aeg or afg");
                out.edges = Some(g.edges().into_iter().map(|(u, v)| [u, v]).collect());
            }
            GameClass::General => {
                out.valuations = Some(
                    pairs
                        .filter(|&(i, j)| !game.value(i, j).is_zero())
                        .map(|(i, j)| ValuationEntry {
                            from: i,
                            to: j,
                            value: game.value(i, j).clone(),
                        })
                        .collect(),
                );
            }
            _ => {
                if let GameClass::Restricted(set) = class {
                    out.value_set = Some(set.iter().cloned().map(RationalLit).collect());
                }
                out.valuations = Some(
                    pairs
                        .map(|(i, j)| ValuationEntry {
                            from: i,
                            to: j,
                            value: game.value(i, j).clone(),
                        })
                        .collect(),
                );
            }
        }
        out
    }
}

fn json_error(what: &str, e: serde_json::Error) -> Error {
    match what {
        "partition" => Error::InvalidPartition(e.to_string()),
        "graph" => Error::InvalidGraph(e.to_string()),
        _ => Error::InvalidGame(e.to_string()),
    }
}

pub fn parse_instance(text: &str) -> Result<HedonicGame> {
    serde_json::from_str::<InstanceJson>(text)
        .map_err(|e| json_error("instance", e))?
        .into_game()
}

pub fn instance_to_string(game: &HedonicGame) -> String {
    serde_json::to_string_pretty(&InstanceJson::from_game(game)).expect("instance serializes")
}

pub fn parse_partition(text: &str, n: usize) -> Result<Partition> {
    serde_json::from_str::<PartitionJson>(text)
        .map_err(|e| json_error("partition", e))?
        .into_partition(n)
}

pub fn partition_to_string(p: &Partition) -> String {
    serde_json::to_string(&PartitionJson::from(p)).expect("partition serializes")
}

pub fn parse_graph(text: &str) -> Result<SimpleGraph> {
    serde_json::from_str::<GraphJson>(text)
        .map_err(|e| json_error("graph", e))?
        .try_into()
}

pub fn graph_to_string(g: &SimpleGraph) -> String {
    serde_json::to_string(&GraphJson::from(g)).expect("graph serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::{int, ratio};

    fn roundtrip(game: &HedonicGame) {
        let text = instance_to_string(game);
        let back = parse_instance(&text).unwrap();
        assert_eq!(&back, game);
        assert_eq!(instance_to_string(&back), text);
    }

    #[test]
    fn fixtures_roundtrip() {
        roundtrip(&fixtures::fig1_game());
        roundtrip(&fixtures::fig3_game());
        roundtrip(&fixtures::asymmetric_four());
    }

    #[test]
    fn edges_expand_to_class_values() {
        let g = parse_instance(r#"{"n": 3, "class": "afg", "edges": [[0, 1]]}"#).unwrap();
        assert_eq!(g.value(0, 1), &int(3));
        assert_eq!(g.value(0, 2), &int(-1));
        assert!(g.is_symmetric());
    }

    #[test]
    fn general_defaults_to_zero() {
        let g = parse_instance(r#"{"n": 3, "class": "general", "valuations": [{"from": 0, "to": 1, "value": "3/2"}, {"from": 1, "to": 0, "value": -2}]}"#).unwrap();
        assert_eq!(g.value(0, 1), &ratio(3, 2));
        assert_eq!(g.value(1, 0), &int(-2));
        assert_eq!(g.value(2, 1), &int(0));
        roundtrip(&g);
    }

    #[test]
    fn rejects_bad_instances() {
        for text in [
            "{",
            r#"{"n": 2, "class": "aeg", "valuations": [{"from": 0, "to": 1, "value": 1}]}"#,
            r#"{"n": 2, "class": "general", "edges": [[0, 1]]}"#,
            r#"{"n": 2, "class": "general", "valuations": [{"from": 0, "to": 0, "value": 1}]}"#,
            r#"{"n": 2, "class": "general", "valuations": [{"from": 0, "to": 1, "value": 0.5}]}"#,
            r#"{"n": 2, "class": "general", "valuations": [{"from": 0, "to": 1, "value": "1/0"}]}"#,
            r#"{"n": 2, "class": "weird"}"#,
            r#"{"n": 0, "class": "general"}"#,
            r#"{"n": 2, "class": "general", "symmetric": true, "valuations": [{"from": 0, "to": 1, "value": 1}]}"#,
            r#"{"n": 2, "class": "restricted", "value_set": [0], "valuations": [{"from": 0, "to": 1, "value": 1}, {"from": 1, "to": 0, "value": 0}]}"#,
        ] {
            assert!(parse_instance(text).is_err(), "{text}");
        }
    }

    #[test]
    fn restricted_roundtrip() {
        let set = vec![int(-1), ratio(1, 2)];
        let g = HedonicGame::from_fn(3, GameClass::Restricted(set.clone()), |i, j| {
            set[(i + 2 * j) % 2].clone()
        })
        .unwrap();
        roundtrip(&g);
    }

    #[test]
    fn partition_and_graph_formats() {
        let p = parse_partition(r#"{"coalitions": [[2, 0], [1]]}"#, 3).unwrap();
        assert_eq!(partition_to_string(&p), r#"{"coalitions":[[0,2],[1]]}"#);
        assert!(parse_partition(r#"{"coalitions": [[0]]}"#, 3).is_err());
        let g = parse_graph(r#"{"n": 3, "edges": [[1, 0]]}"#).unwrap();
        assert_eq!(graph_to_string(&g), r#"{"n":3,"edges":[[0,1]]}"#);
        assert!(parse_graph(r#"{"n": 2, "edges": [[0, 0]]}"#).is_err());
    }
}
