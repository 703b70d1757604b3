//! The additively separable hedonic game model.

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::rational::{format_rational, int, Rational};
use num_traits::Zero;

pub type AgentId = usize;

/// Declared valuation class of a game, validated at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GameClass {
    General,
    /// Aversion to enemies: every valuation is `-n` or `1`.
    Aeg,
    /// Appreciation of friends: every valuation is `-1` or `n`.
    Afg,
    /// Valuations drawn from a fixed finite set.
    Restricted(Vec<Rational>),
}

impl GameClass {
    pub fn name(&self) -> &'static str {
        match self {
            GameClass::General => "general",
            GameClass::Aeg => "aeg",
            GameClass::Afg => "afg",
            GameClass::Restricted(_) => "restricted",
        }
    }

    /// `(enemy, friend)` values for AEG/AFG on `n` agents.
    pub fn friend_enemy_values(&self, n: usize) -> Option<(Rational, Rational)> {
        let n = n as i64;
        match self {
            GameClass::Aeg => Some((int(-n), int(1))),
            GameClass::Afg => Some((int(-1), int(n))),
            _ => None,
        }
    }
}

/// An ASHG `(N, v)` with dense valuation storage.
///
/// `value(i, j)` is agent `i`'s valuation of agent `j`; the diagonal is
/// zero and never read by utility computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HedonicGame {
    n: usize,
    values: Vec<Rational>,
    symmetric: bool,
    class: GameClass,
    labels: Option<Vec<String>>,
}

impl HedonicGame {
    /// Builds a game from a valuation function and validates it against the
    /// declared class. The symmetry flag is set when the valuations are
    /// symmetric.
    pub fn from_fn(
        n: usize,
        class: GameClass,
        f: impl Fn(AgentId, AgentId) -> Rational,
    ) -> Result<Self> {
        let mut values = vec![Rational::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    values[i * n + j] = f(i, j);
                }
            }
        }
        let mut game = HedonicGame {
            n,
            values,
            symmetric: false,
            class,
            labels: None,
        };
        game.symmetric = game.scan_symmetric();
        game.validate()?;
        Ok(game)
    }

    /// Builds a game with an explicitly declared symmetry flag. A declared
    /// flag that the valuations contradict is rejected.
    pub fn with_declared_symmetry(
        n: usize,
        class: GameClass,
        symmetric: bool,
        f: impl Fn(AgentId, AgentId) -> Rational,
    ) -> Result<Self> {
        let mut game = HedonicGame::from_fn(n, class, f)?;
        if symmetric && !game.symmetric {
            return Err(Error::InvalidGame(
                "declared symmetric but valuations differ".into(),
            ));
        }
        game.symmetric = symmetric;
        Ok(game)
    }

    /// Symmetric AEG whose mutual-friendship graph is `friends`.
    pub fn aeg_from_graph(friends: &SimpleGraph) -> Self {
        Self::class_from_graph(friends, GameClass::Aeg)
    }

    /// Symmetric AFG whose mutual-friendship graph is `friends`.
    pub fn afg_from_graph(friends: &SimpleGraph) -> Self {
        Self::class_from_graph(friends, GameClass::Afg)
    }

    fn class_from_graph(friends: &SimpleGraph, class: GameClass) -> Self {
        let n = friends.vertex_count();
        let (enemy, friend) = class.friend_enemy_values(n).expect("aeg or afg");
        HedonicGame::from_fn(n, class, |i, j| {
            if friends.has_edge(i, j) {
                friend.clone()
            } else {
                enemy.clone()
            }
        })
        .expect("class values are valid by construction")
    }

    /// AEG/AFG from directed friendships: `likes(i, j)` means `i` values `j`
    /// as a friend.
    pub fn from_friendships(
        n: usize,
        class: GameClass,
        likes: impl Fn(AgentId, AgentId) -> bool,
    ) -> Result<Self> {
        let (enemy, friend) = class
            .friend_enemy_values(n)
            .ok_or_else(|| Error::InvalidGame("friendship construction needs aeg or afg".into()))?;
        HedonicGame::from_fn(n, class, |i, j| {
            if likes(i, j) {
                friend.clone()
            } else {
                enemy.clone()
            }
        })
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidGame("a game needs at least one agent".into()));
        }
        let allowed: Option<Vec<Rational>> = match &self.class {
            GameClass::General => None,
            GameClass::Aeg | GameClass::Afg => {
                let (e, f) = self.class.friend_enemy_values(self.n).expect("aeg or afg");
                Some(vec![e, f])
            }
            GameClass::Restricted(set) => Some(set.clone()),
        };
        if let Some(allowed) = allowed {
            for i in 0..self.n {
                for j in 0..self.n {
                    if i != j && !allowed.contains(self.value(i, j)) {
                        return Err(Error::InvalidGame(format!(
                            "valuation v({i},{j}) = {} not allowed for class {}",
                            format_rational(self.value(i, j)),
                            self.class.name()
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::InvalidGame(format!(
                "{} labels for {} agents",
                labels.len(),
                self.n
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: AgentId) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }

    pub fn agent_count(&self) -> usize {
        self.n
    }

    pub fn class(&self) -> &GameClass {
        &self.class
    }

    /// Declared symmetry flag.
    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// Full scan for `v(i,j) = v(j,i)`, independent of the declared flag.
    pub fn scan_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.value(i, j) == self.value(j, i)))
    }

    pub fn value(&self, i: AgentId, j: AgentId) -> &Rational {
        &self.values[i * self.n + j]
    }

    /// Undirected graph with an edge wherever both directed valuations equal
    /// the class's friendship value.
    pub fn mutual_friendship_graph(&self) -> Result<SimpleGraph> {
        let (_, friend) =
            self.class
                .friend_enemy_values(self.n)
                .ok_or_else(|| Error::UnsupportedGameClass {
                    expected: "aeg or afg",
                    found: self.class.name().to_string(),
                })?;
        let mut g = SimpleGraph::empty(self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                if *self.value(i, j) == friend && *self.value(j, i) == friend {
                    g.insert(i, j);
                }
            }
        }
        Ok(g)
    }

    /// Undirected graph of pairs where both valuations satisfy `pred`.
    pub fn mutual_graph(&self, pred: impl Fn(&Rational) -> bool) -> SimpleGraph {
        let mut g = SimpleGraph::empty(self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                if pred(self.value(i, j)) && pred(self.value(j, i)) {
                    g.insert(i, j);
                }
            }
        }
        g
    }

    pub(crate) fn require_class(&self, expected: GameClass) -> Result<()> {
        if self.class == expected {
            Ok(())
        } else {
            Err(Error::UnsupportedGameClass {
                expected: expected.name(),
                found: self.class.name().to_string(),
            })
        }
    }

    /// Naive symmetrization `v'(i,j) = (v_i(j) + v_j(i)) / 2` as a general game.
    pub fn symmetrized(&self) -> HedonicGame {
        let half = crate::rational::ratio(1, 2);
        HedonicGame::from_fn(self.n, GameClass::General, |i, j| {
            (self.value(i, j) + self.value(j, i)) * &half
        })
        .expect("general games accept any valuation")
    }

    /// Valuations scaled by the lcm of all denominators, as `i64`, if they
    /// fit with room for sums over `n` agents.
    pub(crate) fn integer_matrix(&self) -> Option<Vec<i64>> {
        use num_integer::Integer;
        use num_traits::ToPrimitive;
        let mut lcm = num_bigint::BigInt::from(1);
        for v in &self.values {
            lcm = lcm.lcm(v.denom());
        }
        let limit = i64::MAX / (self.n as i64 + 1);
        let mut out = Vec::with_capacity(self.values.len());
        for v in &self.values {
            let scaled = (v.numer() * (&lcm / v.denom())).to_i64()?;
            if scaled.abs() > limit {
                return None;
            }
            out.push(scaled);
        }
        Some(out)
    }
}
