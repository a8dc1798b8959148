//! The ECH index, its action-weighted approximation, and the gap bound,
//! evaluated on user-supplied generator data.
//!
//! A generator is a finite weighted collection of Reeb orbits with actions,
//! rotation numbers, self-linking numbers and pairwise linking numbers, all
//! relative to a global trivialization the caller has already fixed. This
//! module computes no Reeb dynamics: it is a formula evaluator for research
//! inputs and for the property tests built on top of it.
//!
//! Rotation numbers may be given exactly as rationals, which makes the
//! floor/ceiling terms of the index deterministic at integer boundaries;
//! binary64 rotation numbers within 1e-9 of an integer are flagged.

use crate::rational::{parse_rational, rint, to_f64, Rational};
use crate::{Error, Result};
use num_traits::ToPrimitive;

/// Rotation number of an orbit: exact or binary64.
#[derive(Clone, Debug, PartialEq)]
pub enum Theta {
    Exact(Rational),
    Approx(f64),
}

impl Theta {
    pub fn to_f64(&self) -> f64 {
        match self {
            Theta::Exact(r) => to_f64(r),
            Theta::Approx(x) => *x,
        }
    }

    /// `floor(k theta) + ceil(k theta)`.
    fn floor_ceil_sum(&self, k: u64) -> i64 {
        match self {
            Theta::Exact(r) => {
                let kt = r * rint(k as i64);
                let floor = kt.floor().to_integer();
                let ceil = kt.ceil().to_integer();
                (floor + ceil).to_i64().expect("index terms fit in i64")
            }
            Theta::Approx(x) => {
                let kt = x * k as f64;
                kt.floor() as i64 + kt.ceil() as i64
            }
        }
    }
}

/// One weighted simple Reeb orbit.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitDatum {
    pub multiplicity: u32,
    /// Symplectic action (period), positive.
    pub action: f64,
    pub theta: Theta,
    pub self_linking: i64,
    pub hyperbolic: bool,
}

/// A weighted orbit set with its pairwise linking matrix (diagonal unused).
#[derive(Clone, Debug, PartialEq)]
pub struct EchGenerator {
    orbits: Vec<OrbitDatum>,
    linking: Vec<Vec<i64>>,
}

impl EchGenerator {
    #[allow(clippy::needless_range_loop)]
    pub fn new(orbits: Vec<OrbitDatum>, linking: Vec<Vec<i64>>) -> Result<Self> {
        let n = orbits.len();
        if linking.len() != n || linking.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidGenerator(
                "linking matrix dimensions must match orbits",
            ));
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && linking[i][j] != linking[j][i] {
                    return Err(Error::InvalidGenerator("linking matrix must be symmetric"));
                }
            }
        }
        for o in &orbits {
            if o.multiplicity == 0 {
                return Err(Error::InvalidGenerator("multiplicities must be positive"));
            }
            if o.action.is_nan() || o.action <= 0.0 {
                return Err(Error::InvalidGenerator("actions must be positive"));
            }
            if o.hyperbolic && o.multiplicity != 1 {
                return Err(Error::InvalidGenerator(
                    "hyperbolic orbits must have multiplicity 1",
                ));
            }
        }
        Ok(EchGenerator { orbits, linking })
    }

    pub fn empty() -> Self {
        EchGenerator {
            orbits: Vec::new(),
            linking: Vec::new(),
        }
    }

    pub fn orbits(&self) -> &[OrbitDatum] {
        &self.orbits
    }

    pub fn linking(&self, i: usize, j: usize) -> i64 {
        self.linking[i][j]
    }

    /// Rotation numbers suspiciously close to integers in binary64 mode,
    /// where the floor/ceiling terms become unstable.
    pub fn boundary_warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, o) in self.orbits.iter().enumerate() {
            if let Theta::Approx(x) = o.theta {
                for k in 1..=o.multiplicity as u64 {
                    let kt = x * k as f64;
                    if (kt - kt.round()).abs() < 1e-9 {
                        out.push(format!(
                            "orbit {i}: {k} * theta = {kt} is within 1e-9 of an integer; \
                             supply theta as an exact rational for a deterministic index"
                        ));
                        break;
                    }
                }
            }
        }
        out
    }
}

/// Total symplectic action `sum m_i A_i`.
pub fn action(gen: &EchGenerator) -> f64 {
    gen.orbits
        .iter()
        .map(|o| o.multiplicity as f64 * o.action)
        .sum()
}

/// The ECH index: self-linking, pairwise linking, and rotation floor/ceil
/// terms of the weighted orbit set.
pub fn ech_index(gen: &EchGenerator) -> i64 {
    let mut total: i64 = 0;
    for (i, o) in gen.orbits.iter().enumerate() {
        let m = o.multiplicity as i64;
        total += m * m * o.self_linking;
        for (j, p) in gen.orbits.iter().enumerate() {
            if i != j {
                total += m * p.multiplicity as i64 * gen.linking[i][j];
            }
        }
        for k in 1..=o.multiplicity as u64 {
            total += o.theta.floor_ceil_sum(k);
        }
    }
    total
}

/// The approximate ECH index: the quadratic linking form weighted by
/// actions plus the linear rotation term. The action factors cancel against
/// the asymptotic-linking normalization, leaving
/// `sum_{i != j} m_i m_j l_ij + sum_i m_i^2 (sl_i + theta_i) + sum_i m_i theta_i`.
pub fn approx_index(gen: &EchGenerator) -> f64 {
    let mut total = 0.0;
    for (i, o) in gen.orbits.iter().enumerate() {
        let m = o.multiplicity as f64;
        let theta = o.theta.to_f64();
        total += m * m * (o.self_linking as f64 + theta);
        total += m * theta;
        for (j, p) in gen.orbits.iter().enumerate() {
            if i != j {
                total += m * p.multiplicity as f64 * gen.linking[i][j] as f64;
            }
        }
    }
    total
}

/// Exact evaluation of the rewritten index (quadratic form minus the linear
/// rotation term plus the floor/ceiling terms); defined only when every
/// rotation number is exact. Agrees with [`ech_index`] identically.
pub fn ech_index_rewrite(gen: &EchGenerator) -> Result<Rational> {
    let mut total = Rational::from_integer(0.into());
    for (i, o) in gen.orbits.iter().enumerate() {
        let theta = match &o.theta {
            Theta::Exact(r) => r.clone(),
            Theta::Approx(_) => {
                return Err(Error::InvalidGenerator(
                    "the rewrite identity needs exact rotation numbers",
                ))
            }
        };
        let m = rint(o.multiplicity as i64);
        // quadratic form diagonal f_ii = (sl_i + theta_i) / A_i^2 times
        // (m_i A_i)^2, and the linear correction -m_i^2 theta_i
        total += &m * &m * (rint(o.self_linking) + &theta);
        total -= &m * &m * &theta;
        for (j, p) in gen.orbits.iter().enumerate() {
            if i != j {
                total += &m * rint(p.multiplicity as i64) * rint(gen.linking[i][j]);
            }
        }
        for k in 1..=o.multiplicity as u64 {
            let kt = &theta * rint(k as i64);
            total += Rational::from_integer(kt.floor().to_integer() + kt.ceil().to_integer());
        }
    }
    Ok(total)
}

/// Gap between the approximate and the exact index, with its proven bound
/// `sum m_i`; `ok` must always hold.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GapCheck {
    pub gap: f64,
    pub bound: u64,
    pub ok: bool,
}

pub fn gap_check(gen: &EchGenerator) -> GapCheck {
    let gap = (approx_index(gen) - ech_index(gen) as f64).abs();
    let bound: u64 = gen.orbits.iter().map(|o| o.multiplicity as u64).sum();
    GapCheck {
        gap,
        bound,
        ok: gap <= bound as f64 + 1e-9,
    }
}

/// Parse a generator from its JSON form:
/// `{"orbits":[{"m":1,"A":"1","theta":"6/5","sl":-1,"hyperbolic":false},...],
///   "linking":[[null,0],[0,null]]}`.
/// Rationals may be `"p/q"` strings or JSON numbers; string rotation
/// numbers are kept exact.
pub fn parse_generator(json: &str) -> Result<EchGenerator> {
    let v: serde_json::Value =
        serde_json::from_str(json).map_err(|e| Error::Parse(format!("generator JSON: {e}")))?;
    let orbits_v = v
        .get("orbits")
        .and_then(|o| o.as_array())
        .ok_or_else(|| Error::Parse("generator needs an \"orbits\" array".into()))?;
    let mut orbits = Vec::with_capacity(orbits_v.len());
    for (i, ov) in orbits_v.iter().enumerate() {
        let get = |key: &str| {
            ov.get(key)
                .ok_or_else(|| Error::Parse(format!("orbit {i}: missing \"{key}\"")))
        };
        let m = get("m")?
            .as_u64()
            .ok_or_else(|| Error::Parse(format!("orbit {i}: \"m\" must be a positive integer")))?;
        let action = match get("A")? {
            serde_json::Value::String(s) => to_f64(&parse_rational(s)?),
            serde_json::Value::Number(n) => n
                .as_f64()
                .ok_or_else(|| Error::Parse(format!("orbit {i}: bad action")))?,
            _ => {
                return Err(Error::Parse(format!(
                    "orbit {i}: \"A\" must be a number or string"
                )))
            }
        };
        let theta = match get("theta")? {
            serde_json::Value::String(s) => Theta::Exact(parse_rational(s)?),
            serde_json::Value::Number(n) => Theta::Approx(
                n.as_f64()
                    .ok_or_else(|| Error::Parse(format!("orbit {i}: bad theta")))?,
            ),
            _ => {
                return Err(Error::Parse(format!(
                    "orbit {i}: \"theta\" must be a number or string"
                )))
            }
        };
        let sl = get("sl")?
            .as_i64()
            .ok_or_else(|| Error::Parse(format!("orbit {i}: \"sl\" must be an integer")))?;
        let hyperbolic = ov
            .get("hyperbolic")
            .and_then(|h| h.as_bool())
            .unwrap_or(false);
        orbits.push(OrbitDatum {
            multiplicity: m as u32,
            action,
            theta,
            self_linking: sl,
            hyperbolic,
        });
    }
    let linking_v = v
        .get("linking")
        .and_then(|l| l.as_array())
        .ok_or_else(|| Error::Parse("generator needs a \"linking\" matrix".into()))?;
    let n = orbits.len();
    let mut linking = vec![vec![0i64; n]; n];
    if linking_v.len() != n {
        return Err(Error::Parse(
            "linking matrix must have one row per orbit".into(),
        ));
    }
    for (i, row) in linking_v.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| Error::Parse("linking rows must be arrays".into()))?;
        if row.len() != n {
            return Err(Error::Parse("linking matrix must be square".into()));
        }
        for (j, cell) in row.iter().enumerate() {
            linking[i][j] = match cell {
                serde_json::Value::Null => 0,
                other => other
                    .as_i64()
                    .ok_or_else(|| Error::Parse("linking entries must be integers".into()))?,
            };
        }
    }
    EchGenerator::new(orbits, linking)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn single(m: u32, sl: i64, theta: Theta) -> EchGenerator {
        EchGenerator::new(
            vec![OrbitDatum {
                multiplicity: m,
                action: 1.0,
                theta,
                self_linking: sl,
                hyperbolic: false,
            }],
            vec![vec![0]],
        )
        .unwrap()
    }

    #[test]
    fn action_examples() {
        let g = single(1, -1, Theta::Approx(0.5));
        assert_eq!(action(&g), 1.0);
        let two = EchGenerator::new(
            vec![
                OrbitDatum {
                    multiplicity: 2,
                    action: 1.0,
                    theta: Theta::Approx(0.3),
                    self_linking: 0,
                    hyperbolic: false,
                },
                OrbitDatum {
                    multiplicity: 1,
                    action: 3.0,
                    theta: Theta::Approx(-0.7),
                    self_linking: 0,
                    hyperbolic: false,
                },
            ],
            vec![vec![0, 0], vec![0, 0]],
        )
        .unwrap();
        assert_eq!(action(&two), 5.0);
        assert_eq!(action(&EchGenerator::empty()), 0.0);
    }

    #[test]
    fn ech_index_examples() {
        // m = 1, sl = -1, theta = 6/5: I = -1 + (1 + 2) = 2
        let g = single(1, -1, Theta::Exact(rat(6, 5)));
        assert_eq!(ech_index(&g), 2);
        // m = 2: I = -4 + (1 + 2) + (2 + 3) = 4
        let g = single(2, -1, Theta::Exact(rat(6, 5)));
        assert_eq!(ech_index(&g), 4);
    }

    #[test]
    fn unlinked_orbits_add() {
        let a = single(1, -1, Theta::Exact(rat(6, 5)));
        let b = single(2, 3, Theta::Exact(rat(-7, 3)));
        let joint = EchGenerator::new(
            vec![a.orbits()[0].clone(), b.orbits()[0].clone()],
            vec![vec![0, 0], vec![0, 0]],
        )
        .unwrap();
        assert_eq!(ech_index(&joint), ech_index(&a) + ech_index(&b));
    }

    #[test]
    fn approx_index_examples() {
        let g = single(1, -1, Theta::Approx(1.2));
        assert!((approx_index(&g) - 1.4).abs() < 1e-12);
        // integer rotation number: approx equals exact
        let g = single(1, -1, Theta::Exact(rat(3, 1)));
        assert_eq!(approx_index(&g), ech_index(&g) as f64);
        // rescaling every action leaves the approximation unchanged
        let mut orbits = vec![
            OrbitDatum {
                multiplicity: 2,
                action: 1.5,
                theta: Theta::Approx(0.7),
                self_linking: -1,
                hyperbolic: false,
            },
            OrbitDatum {
                multiplicity: 3,
                action: 2.5,
                theta: Theta::Approx(-1.9),
                self_linking: 2,
                hyperbolic: false,
            },
        ];
        let linking = vec![vec![0, 4], vec![4, 0]];
        let g1 = EchGenerator::new(orbits.clone(), linking.clone()).unwrap();
        for o in &mut orbits {
            o.action *= 2.0;
        }
        let g2 = EchGenerator::new(orbits, linking).unwrap();
        assert_eq!(approx_index(&g1), approx_index(&g2));
    }

    #[test]
    fn gap_examples() {
        let g = single(1, -1, Theta::Approx(1.2));
        let c = gap_check(&g);
        assert!((c.gap - 0.6).abs() < 1e-12);
        assert_eq!(c.bound, 1);
        assert!(c.ok);

        let g = single(3, 5, Theta::Exact(rat(4, 1)));
        assert_eq!(gap_check(&g).gap, 0.0);
    }

    #[test]
    fn rewrite_is_an_identity() {
        let g = EchGenerator::new(
            vec![
                OrbitDatum {
                    multiplicity: 3,
                    action: 1.0,
                    theta: Theta::Exact(rat(-7, 3)),
                    self_linking: 2,
                    hyperbolic: false,
                },
                OrbitDatum {
                    multiplicity: 2,
                    action: 2.0,
                    theta: Theta::Exact(rat(11, 4)),
                    self_linking: -3,
                    hyperbolic: false,
                },
            ],
            vec![vec![0, -2], vec![-2, 0]],
        )
        .unwrap();
        assert_eq!(ech_index_rewrite(&g).unwrap(), rint(ech_index(&g)));
    }

    #[test]
    fn generator_validation() {
        // hyperbolic orbits must be simple
        let bad = EchGenerator::new(
            vec![OrbitDatum {
                multiplicity: 2,
                action: 1.0,
                theta: Theta::Approx(0.5),
                self_linking: 0,
                hyperbolic: true,
            }],
            vec![vec![0]],
        );
        assert!(bad.is_err());
        // asymmetric linking rejected
        let bad = EchGenerator::new(
            vec![
                OrbitDatum {
                    multiplicity: 1,
                    action: 1.0,
                    theta: Theta::Approx(0.5),
                    self_linking: 0,
                    hyperbolic: false,
                };
                2
            ],
            vec![vec![0, 1], vec![2, 0]],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn parse_generator_json() {
        let g = parse_generator(
            r#"{"orbits":[{"m":1,"A":"1","theta":"6/5","sl":-1,"hyperbolic":false},
                          {"m":2,"A":2.5,"theta":-0.25,"sl":0}],
                "linking":[[null,3],[3,null]]}"#,
        )
        .unwrap();
        assert_eq!(g.orbits().len(), 2);
        assert_eq!(g.orbits()[0].theta, Theta::Exact(rat(6, 5)));
        assert_eq!(g.linking(0, 1), 3);
        assert_eq!(ech_index(&g), ech_index(&g));
        assert!(parse_generator("{}").is_err());
        assert!(parse_generator("not json").is_err());
    }

    #[test]
    fn near_integer_warning() {
        let g = single(1, 0, Theta::Approx(2.0 + 1e-12));
        assert_eq!(g.boundary_warnings().len(), 1);
        let g = single(1, 0, Theta::Approx(2.5));
        assert!(g.boundary_warnings().is_empty());
    }
}
