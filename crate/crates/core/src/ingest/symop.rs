//! Affine symmetry operations written as coordinate triples, e.g.
//! `-x+1/2, y, z+0.25`.

use crate::error::IngestError;

#[derive(Debug, Clone, PartialEq)]
pub struct SymOp {
    /// `rotation[i][j]` is the coefficient of coordinate `j` in output `i`.
    pub rotation: [[f64; 3]; 3],
    pub translation: [f64; 3],
}

impl SymOp {
    pub fn identity() -> Self {
        SymOp {
            rotation: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
            translation: [0.0; 3],
        }
    }

    pub fn parse(text: &str) -> Result<Self, IngestError> {
        let err = |message: &str| IngestError::SymOp {
            op: text.to_string(),
            message: message.to_string(),
        };
        let cleaned: String = text
            .trim()
            .trim_matches(|c| c == '\'' || c == '"')
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect();
        let parts: Vec<&str> = cleaned.split(',').collect();
        if parts.len() != 3 {
            return Err(err("expected three comma-separated components"));
        }
        let mut op = SymOp {
            rotation: [[0.0; 3]; 3],
            translation: [0.0; 3],
        };
        for (i, part) in parts.iter().enumerate() {
            parse_component(part, &mut op.rotation[i], &mut op.translation[i])
                .map_err(|m| err(&m))?;
        }
        Ok(op)
    }

    pub fn apply(&self, p: &[f64; 3]) -> [f64; 3] {
        let mut out = self.translation;
        for (o, row) in out.iter_mut().zip(&self.rotation) {
            *o += row.iter().zip(p).map(|(a, b)| a * b).sum::<f64>();
        }
        out
    }
}

/// Parses one component such as `-x+y+1/3` into coefficients and a constant.
fn parse_component(s: &str, coeffs: &mut [f64; 3], constant: &mut f64) -> Result<(), String> {
    if s.is_empty() {
        return Err("empty component".into());
    }
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = 1.0;
        match bytes[i] {
            b'+' => i += 1,
            b'-' => {
                sign = -1.0;
                i += 1;
            }
            _ if i > 0 => return Err(format!("expected sign at {:?}", &s[i..])),
            _ => {}
        }
        let start = i;
        while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.' || bytes[i] == b'/') {
            i += 1;
        }
        let number = &s[start..i];
        let value = if number.is_empty() {
            None
        } else {
            Some(parse_number(number)?)
        };
        if i < bytes.len() && bytes[i] == b'*' {
            i += 1;
        }
        let axis = match bytes.get(i).map(|b| b.to_ascii_lowercase()) {
            Some(b'x') => Some(0),
            Some(b'y') => Some(1),
            Some(b'z') => Some(2),
            _ => None,
        };
        match (value, axis) {
            (v, Some(a)) => {
                coeffs[a] += sign * v.unwrap_or(1.0);
                i += 1;
            }
            (Some(v), None) => *constant += sign * v,
            (None, None) => return Err(format!("unexpected text {:?}", &s[start..])),
        }
    }
    Ok(())
}

fn parse_number(s: &str) -> Result<f64, String> {
    let bad = || format!("bad number {s:?}");
    match s.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.parse().map_err(|_| bad())?;
            let q: f64 = q.parse().map_err(|_| bad())?;
            if q == 0.0 {
                return Err(bad());
            }
            Ok(p / q)
        }
        None => s.parse().map_err(|_| bad()),
    }
}
