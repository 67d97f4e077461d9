//! Text form of polytopes:
//!
//! ```text
//! T(s,t)  P21(s,t)  P22  P31  P32(s,t)  W2:i  E:i  [(x,y,z);(x,y,z);...]
//! ```
//!
//! Whitespace is ignored and names are case-insensitive.

use super::{
    embedded_polygon, empty_tetrahedron, width1_representative, width2_representative,
    LatticePolytope, Point, Width1Sig,
};
use crate::error::{Error, Result};

fn parse_int(s: &str, ctx: &str) -> Result<i64> {
    s.parse::<i64>()
        .map_err(|_| Error::Parse(format!("expected an integer in {ctx}, found {s:?}")))
}

fn parse_pair(args: &str, ctx: &str) -> Result<(i64, i64)> {
    let inner = args
        .strip_prefix('(')
        .and_then(|a| a.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("{ctx} expects (s,t)")))?;
    let mut parts = inner.split(',');
    match (parts.next(), parts.next(), parts.next()) {
        (Some(a), Some(b), None) => Ok((parse_int(a, ctx)?, parse_int(b, ctx)?)),
        _ => Err(Error::Parse(format!(
            "{ctx} expects exactly two parameters"
        ))),
    }
}

fn parse_index(rest: &str, ctx: &str) -> Result<u8> {
    rest.parse::<u8>().map_err(|_| {
        Error::Parse(format!(
            "{ctx} expects a small positive index, found {rest:?}"
        ))
    })
}

fn parse_point(s: &str) -> Result<Point> {
    let inner = s
        .strip_prefix('(')
        .and_then(|a| a.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("point {s:?} must look like (x,y,z)")))?;
    let coords: Vec<&str> = inner.split(',').collect();
    if coords.len() != 3 {
        return Err(Error::Parse(format!(
            "point {s:?} must have three coordinates"
        )));
    }
    Ok([
        parse_int(coords[0], "point")?,
        parse_int(coords[1], "point")?,
        parse_int(coords[2], "point")?,
    ])
}

/// Parses a polytope spec string. Parameter violations (for example
/// `T(2,4)`) surface as the constructor's `InvalidParams`.
pub fn parse_polytope(text: &str) -> Result<LatticePolytope> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let upper = compact.to_ascii_uppercase();
    if upper.is_empty() {
        return Err(Error::Parse("empty polytope spec".into()));
    }
    if let Some(body) = upper.strip_prefix('[') {
        let body = body
            .strip_suffix(']')
            .ok_or_else(|| Error::Parse("point list must end with ']'".into()))?;
        if body.is_empty() {
            return Err(Error::Parse("point list is empty".into()));
        }
        let points = body
            .split(';')
            .map(parse_point)
            .collect::<Result<Vec<_>>>()?;
        return LatticePolytope::custom(points);
    }
    if let Some(rest) = upper.strip_prefix("W2:") {
        return width2_representative(parse_index(rest, "W2")?);
    }
    if let Some(rest) = upper.strip_prefix("E:") {
        return embedded_polygon(parse_index(rest, "E")?);
    }
    match upper.as_str() {
        "P22" => return width1_representative(Width1Sig::Sig22, 0, 0),
        "P31" => return width1_representative(Width1Sig::Sig31, 0, 0),
        _ => {}
    }
    if let Some(args) = upper.strip_prefix("P21") {
        let (s, t) = parse_pair(args, "P21")?;
        return width1_representative(Width1Sig::Sig21, s, t);
    }
    if let Some(args) = upper.strip_prefix("P32") {
        let (s, t) = parse_pair(args, "P32")?;
        return width1_representative(Width1Sig::Sig32, s, t);
    }
    if let Some(args) = upper.strip_prefix('T') {
        let (s, t) = parse_pair(args, "T")?;
        return empty_tetrahedron(s, t);
    }
    Err(Error::Parse(format!("unrecognised polytope spec {text:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::Family;

    #[test]
    fn parses_each_form() {
        assert_eq!(
            parse_polytope("T(1,2)").unwrap().family(),
            Family::EmptyTetra { s: 1, t: 2 }
        );
        assert_eq!(
            parse_polytope(" p21( 1 , 3 ) ").unwrap().family(),
            Family::Sig21 { s: 1, t: 3 }
        );
        assert_eq!(parse_polytope("P22").unwrap().family(), Family::Sig22);
        assert_eq!(parse_polytope("P31").unwrap().family(), Family::Sig31);
        assert_eq!(
            parse_polytope("P32(1,1)").unwrap().family(),
            Family::Sig32 { s: 1, t: 1 }
        );
        assert_eq!(
            parse_polytope("W2:7").unwrap().family(),
            Family::Width2Row(7)
        );
        assert_eq!(
            parse_polytope("E:3").unwrap().family(),
            Family::EmbeddedPolygon(3)
        );
        let custom = parse_polytope("[(0,0,0);(1,0,0);(-1,-1,2)]").unwrap();
        assert_eq!(custom.points(), &[[0, 0, 0], [1, 0, 0], [-1, -1, 2]]);
        assert_eq!(custom.family(), Family::Custom);
    }

    #[test]
    fn round_trips_display() {
        for spec in [
            "T(3,7)",
            "P21(1,4)",
            "P22",
            "P31",
            "P32(2,5)",
            "W2:1",
            "E:4",
            "[(0,0,0);(1,2,3)]",
        ] {
            let p = parse_polytope(spec).unwrap();
            assert_eq!(parse_polytope(&p.to_string()).unwrap(), p, "{spec}");
        }
    }

    #[test]
    fn reports_errors() {
        assert!(matches!(parse_polytope("Q(1,2)"), Err(Error::Parse(_))));
        assert!(matches!(parse_polytope("T(1)"), Err(Error::Parse(_))));
        assert!(matches!(parse_polytope("T(a,b)"), Err(Error::Parse(_))));
        assert!(matches!(parse_polytope("[(0,0)]"), Err(Error::Parse(_))));
        assert!(matches!(parse_polytope("[]"), Err(Error::Parse(_))));
        assert!(matches!(parse_polytope(""), Err(Error::Parse(_))));
        assert!(matches!(
            parse_polytope("T(2,4)"),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            parse_polytope("W2:10"),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(parse_polytope("W2:x"), Err(Error::Parse(_))));
    }
}
