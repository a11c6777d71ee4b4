//! Named graph families and the pattern mini-language.
//!
//! [`GraphSpec`] is a small expression tree describing the pattern graphs
//! the tool accepts on the command line and in test fixtures. Each family
//! builds with a fixed, documented vertex ordering so that encodings and
//! reports are reproducible:
//!
//! * `Kn(n)`       complete graph on `0..n`;
//! * `Kpq(p, q)`   complete bipartite, side A = `0..p`, side B = `p..p+q`;
//! * `Pn(n)`       path `0-1-..-(n-1)`;
//! * `Cn(n)`       cycle `0-1-..-(n-1)-0`, `n >= 3`;
//! * `Star(s)`     `K_{1,s}` with centre `0` and leaves `1..=s`;
//! * `Matching(m)` `m` disjoint edges `(2i, 2i+1)`;
//! * `EmptyN(n)`   `n` isolated vertices;
//! * `Paw`         triangle `{0,1,2}` plus pendant `3` attached to `0`;
//! * `Bull`        triangle `{0,1,2}` plus pendants `3-0` and `4-2`;
//! * `Union(a, b)` disjoint union, `a`'s vertices first.
//!
//! The textual syntax is `TERM (+ TERM)*` where a term is an optional
//! multiplicity followed by a family name: `K3`, `P4`, `C5`, `PAW`, `BULL`,
//! `2K2`, `3K1`, `K3+K1`. A `K` followed by exactly two nonzero digits is
//! complete bipartite (`K13` is `K_{1,3}`, `K33` is `K_{3,3}`); any other
//! digit string after `K` is a complete graph (`K10` is the clique on ten
//! vertices). `Kp,q` with an explicit comma is also accepted. Names are
//! case-insensitive.

use crate::graph::Graph;
use crate::Error;

/// A symbolic description of a small named graph. See the module docs for
/// the fixed vertex ordering of each family.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GraphSpec {
    Kn(usize),
    Kpq(usize, usize),
    Pn(usize),
    Cn(usize),
    Star(usize),
    Matching(usize),
    EmptyN(usize),
    Paw,
    Bull,
    Union(Box<GraphSpec>, Box<GraphSpec>),
}

impl GraphSpec {
    /// Number of vertices the built graph will have.
    pub fn order(&self) -> usize {
        match self {
            GraphSpec::Kn(n) | GraphSpec::Pn(n) | GraphSpec::Cn(n) | GraphSpec::EmptyN(n) => *n,
            GraphSpec::Kpq(p, q) => p + q,
            GraphSpec::Star(s) => s + 1,
            GraphSpec::Matching(m) => 2 * m,
            GraphSpec::Paw => 4,
            GraphSpec::Bull => 5,
            GraphSpec::Union(a, b) => a.order() + b.order(),
        }
    }

    /// Materialise the graph with the documented vertex ordering.
    pub fn build(&self) -> Result<Graph, Error> {
        match self {
            GraphSpec::Kn(n) => {
                let mut g = Graph::empty(*n)?;
                for u in 0..*n {
                    for v in (u + 1)..*n {
                        g.add_edge(u, v);
                    }
                }
                Ok(g)
            }
            GraphSpec::Kpq(p, q) => {
                if *p == 0 || *q == 0 {
                    return Err(Error::InvalidSpec(format!(
                        "complete bipartite needs both sides nonempty, got ({p},{q})"
                    )));
                }
                let mut g = Graph::empty(p + q)?;
                for u in 0..*p {
                    for v in *p..(p + q) {
                        g.add_edge(u, v);
                    }
                }
                Ok(g)
            }
            GraphSpec::Pn(n) => {
                if *n == 0 {
                    return Err(Error::InvalidSpec("path needs at least one vertex".into()));
                }
                let mut g = Graph::empty(*n)?;
                for v in 1..*n {
                    g.add_edge(v - 1, v);
                }
                Ok(g)
            }
            GraphSpec::Cn(n) => {
                if *n < 3 {
                    return Err(Error::InvalidSpec(format!(
                        "cycle needs at least three vertices, got {n}"
                    )));
                }
                let mut g = Graph::empty(*n)?;
                for v in 1..*n {
                    g.add_edge(v - 1, v);
                }
                g.add_edge(*n - 1, 0);
                Ok(g)
            }
            GraphSpec::Star(s) => {
                if *s == 0 {
                    return Err(Error::InvalidSpec("star needs at least one leaf".into()));
                }
                let mut g = Graph::empty(s + 1)?;
                for v in 1..=*s {
                    g.add_edge(0, v);
                }
                Ok(g)
            }
            GraphSpec::Matching(m) => {
                if *m == 0 {
                    return Err(Error::InvalidSpec("matching needs at least one edge".into()));
                }
                let mut g = Graph::empty(2 * m)?;
                for i in 0..*m {
                    g.add_edge(2 * i, 2 * i + 1);
                }
                Ok(g)
            }
            GraphSpec::EmptyN(n) => Graph::empty(*n),
            GraphSpec::Paw => Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (0, 3)]),
            GraphSpec::Bull => Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (2, 4)]),
            GraphSpec::Union(a, b) => a.build()?.disjoint_union(&b.build()?),
        }
    }

    /// Parse the pattern mini-language. See the module docs for the
    /// grammar.
    pub fn parse(input: &str) -> Result<Self, Error> {
        let text = input.trim();
        if text.is_empty() {
            return Err(Error::ParseSpec("empty pattern".into()));
        }
        let mut terms = Vec::new();
        for raw in text.split('+') {
            terms.push(Self::parse_term(raw.trim(), input)?);
        }
        let mut iter = terms.into_iter();
        let first = iter.next().expect("split yields at least one piece");
        Ok(iter.fold(first, |acc, t| GraphSpec::Union(Box::new(acc), Box::new(t))))
    }

    fn parse_term(term: &str, whole: &str) -> Result<Self, Error> {
        if term.is_empty() {
            return Err(Error::ParseSpec(format!("empty term in '{whole}'")));
        }
        let digits_end = term.find(|c: char| !c.is_ascii_digit()).ok_or_else(|| {
            Error::ParseSpec(format!("term '{term}' has no family name in '{whole}'"))
        })?;
        let mult: usize = if digits_end == 0 {
            1
        } else {
            term[..digits_end].parse().map_err(|_| {
                Error::ParseSpec(format!("bad multiplicity in term '{term}'"))
            })?
        };
        if mult == 0 {
            return Err(Error::ParseSpec(format!(
                "zero multiplicity in term '{term}'"
            )));
        }
        let base = Self::parse_base(&term[digits_end..], whole)?;
        if mult == 1 {
            return Ok(base);
        }
        // Compress the common multiset shorthands, fold the rest.
        match base {
            GraphSpec::Kn(1) => Ok(GraphSpec::EmptyN(mult)),
            GraphSpec::Kn(2) => Ok(GraphSpec::Matching(mult)),
            other => {
                let mut acc = other.clone();
                for _ in 1..mult {
                    acc = GraphSpec::Union(Box::new(acc), Box::new(other.clone()));
                }
                Ok(acc)
            }
        }
    }

    fn parse_base(base: &str, whole: &str) -> Result<Self, Error> {
        let upper = base.to_ascii_uppercase();
        match upper.as_str() {
            "PAW" | "PW" => return Ok(GraphSpec::Paw),
            "BULL" => return Ok(GraphSpec::Bull),
            _ => {}
        }
        let mut chars = upper.chars();
        let family = chars.next().unwrap();
        let rest: String = chars.collect();
        let parse_num = |s: &str| -> Result<usize, Error> {
            s.parse()
                .map_err(|_| Error::ParseSpec(format!("bad number '{s}' in '{whole}'")))
        };
        match family {
            'K' => {
                if let Some((p, q)) = rest.split_once(',') {
                    return Ok(GraphSpec::Kpq(parse_num(p)?, parse_num(q)?));
                }
                let bytes = rest.as_bytes();
                if bytes.len() == 2
                    && bytes.iter().all(|b| b.is_ascii_digit())
                    && bytes[0] != b'0'
                    && bytes[1] != b'0'
                {
                    let p = (bytes[0] - b'0') as usize;
                    let q = (bytes[1] - b'0') as usize;
                    return Ok(GraphSpec::Kpq(p, q));
                }
                Ok(GraphSpec::Kn(parse_num(&rest)?))
            }
            'P' => Ok(GraphSpec::Pn(parse_num(&rest)?)),
            'C' => Ok(GraphSpec::Cn(parse_num(&rest)?)),
            _ => Err(Error::ParseSpec(format!(
                "unknown family '{base}' in '{whole}'"
            ))),
        }
    }
}

impl std::fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GraphSpec::Kn(n) => write!(f, "K{n}"),
            GraphSpec::Kpq(p, q) => {
                if *p <= 9 && *q <= 9 {
                    write!(f, "K{p}{q}")
                } else {
                    write!(f, "K{p},{q}")
                }
            }
            GraphSpec::Pn(n) => write!(f, "P{n}"),
            GraphSpec::Cn(n) => write!(f, "C{n}"),
            GraphSpec::Star(s) => {
                if *s <= 9 {
                    write!(f, "K1{s}")
                } else {
                    write!(f, "K1,{s}")
                }
            }
            GraphSpec::Matching(m) => {
                if *m == 1 {
                    write!(f, "K2")
                } else {
                    write!(f, "{m}K2")
                }
            }
            GraphSpec::EmptyN(n) => {
                if *n == 1 {
                    write!(f, "K1")
                } else {
                    write!(f, "{n}K1")
                }
            }
            GraphSpec::Paw => write!(f, "PAW"),
            GraphSpec::Bull => write!(f, "BULL"),
            GraphSpec::Union(a, b) => write!(f, "{a}+{b}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_degrees(g: &Graph) -> Vec<usize> {
        let mut d = g.degrees();
        d.sort_unstable();
        d
    }

    #[test]
    fn paw_and_bull_shapes() {
        let paw = GraphSpec::Paw.build().unwrap();
        assert_eq!(sorted_degrees(&paw), vec![1, 2, 2, 3]);
        // The three mutually adjacent vertices of the paw are 0, 1, 2.
        let tri = paw.induced(&[0, 1, 2]).unwrap();
        assert_eq!(tri.edge_count(), 3);

        let bull = GraphSpec::Bull.build().unwrap();
        assert_eq!(sorted_degrees(&bull), vec![1, 1, 2, 3, 3]);
        assert_eq!(bull.edge_count(), 5);
    }

    #[test]
    fn star_is_complete_bipartite_one_side() {
        let star = GraphSpec::Star(3).build().unwrap();
        assert_eq!(star.degrees(), vec![3, 1, 1, 1]);
        assert_eq!(star, GraphSpec::Kpq(1, 3).build().unwrap());
    }

    #[test]
    fn union_and_empty() {
        let g = GraphSpec::Union(Box::new(GraphSpec::Kn(3)), Box::new(GraphSpec::EmptyN(1)))
            .build()
            .unwrap();
        assert_eq!(sorted_degrees(&g), vec![0, 2, 2, 2]);
        assert_eq!(GraphSpec::EmptyN(0).build().unwrap().order(), 0);
    }

    #[test]
    fn family_domain_errors() {
        assert!(matches!(
            GraphSpec::Cn(2).build(),
            Err(Error::InvalidSpec(_))
        ));
        assert!(matches!(
            GraphSpec::Kpq(0, 3).build(),
            Err(Error::InvalidSpec(_))
        ));
        assert!(matches!(
            GraphSpec::Star(0).build(),
            Err(Error::InvalidSpec(_))
        ));
    }

    #[test]
    fn parser_accepts_the_documented_language() {
        let cases: Vec<(&str, GraphSpec)> = vec![
            ("K3", GraphSpec::Kn(3)),
            ("K13", GraphSpec::Kpq(1, 3)),
            ("K33", GraphSpec::Kpq(3, 3)),
            ("K2,3", GraphSpec::Kpq(2, 3)),
            ("K10", GraphSpec::Kn(10)),
            ("P4", GraphSpec::Pn(4)),
            ("C5", GraphSpec::Cn(5)),
            ("2K2", GraphSpec::Matching(2)),
            ("3K1", GraphSpec::EmptyN(3)),
            ("PAW", GraphSpec::Paw),
            ("bull", GraphSpec::Bull),
            (
                "K3+K1",
                GraphSpec::Union(Box::new(GraphSpec::Kn(3)), Box::new(GraphSpec::Kn(1))),
            ),
            (
                "P3+K1",
                GraphSpec::Union(Box::new(GraphSpec::Pn(3)), Box::new(GraphSpec::Kn(1))),
            ),
            (
                "2K3",
                GraphSpec::Union(Box::new(GraphSpec::Kn(3)), Box::new(GraphSpec::Kn(3))),
            ),
        ];
        for (text, want) in cases {
            assert_eq!(GraphSpec::parse(text).unwrap(), want, "parsing '{text}'");
        }
    }

    #[test]
    fn parser_rejects_garbage() {
        for bad in ["", "X7", "K", "2", "K3+", "0K2", "K3 K1", "Kx"] {
            assert!(
                matches!(GraphSpec::parse(bad), Err(Error::ParseSpec(_))),
                "'{bad}' should not parse"
            );
        }
    }

    #[test]
    fn display_round_trips_through_parse() {
        for text in ["K3", "K13", "P4", "C5", "2K2", "3K1", "PAW", "BULL", "K3+K1"] {
            let spec = GraphSpec::parse(text).unwrap();
            let shown = spec.to_string();
            let reparsed = GraphSpec::parse(&shown).unwrap();
            assert_eq!(
                reparsed.build().unwrap(),
                spec.build().unwrap(),
                "display '{shown}' of '{text}' should rebuild the same graph"
            );
        }
    }

    #[test]
    fn multiplicity_folds_unions() {
        let g = GraphSpec::parse("3K3").unwrap().build().unwrap();
        assert_eq!(g.order(), 9);
        assert_eq!(g.edge_count(), 9);
        assert!(g.has_edge(0, 1) && g.has_edge(3, 4) && g.has_edge(6, 7));
    }
}
