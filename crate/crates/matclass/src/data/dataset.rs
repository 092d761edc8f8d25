//! Instances, datasets and CSV ingestion/emission.

use std::io::{Read, Write};

use crate::error::{Error, Result};

use super::schema::Schema;

/// One attribute value, positionally aligned with the schema.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Categorical(String),
    Continuous(f64),
}

impl Value {
    pub fn as_str(&self) -> Option<&str> {
        match self {
            Value::Categorical(s) => Some(s),
            Value::Continuous(_) => None,
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Value::Categorical(_) => None,
            Value::Continuous(x) => Some(*x),
        }
    }
}

/// A row: attribute values in schema order plus an optional class label.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub values: Vec<Value>,
    pub label: Option<String>,
}

impl Instance {
    pub fn new(values: Vec<Value>, label: Option<String>) -> Self {
        Self { values, label }
    }
}

/// Schema-conformant rows. Construction validates every row, so a `Dataset`
/// in hand always satisfies the vocabulary and finiteness invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    schema: Schema,
    rows: Vec<Instance>,
}

impl Dataset {
    pub fn new(schema: Schema, rows: Vec<Instance>) -> Result<Self> {
        for (i, row) in rows.iter().enumerate() {
            validate_instance(&schema, row).map_err(|(column, message)| Error::InvalidRow {
                row: i + 1,
                column,
                message,
            })?;
        }
        Ok(Self { schema, rows })
    }

    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    pub fn rows(&self) -> &[Instance] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Errors unless every row carries a label (required for training).
    pub fn require_labels(&self) -> Result<()> {
        match self.rows.iter().position(|r| r.label.is_none()) {
            None => Ok(()),
            Some(i) => Err(Error::InvalidDataset(format!("row {} has no label", i + 1))),
        }
    }

    /// Per-class row counts in `class_labels` order.
    pub fn class_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.schema.num_classes()];
        for row in &self.rows {
            if let Some(label) = &row.label {
                if let Some(c) = self.schema.class_index(label) {
                    counts[c] += 1;
                }
            }
        }
        counts
    }

    /// Read a dataset from RFC-4180 CSV. The header must contain every
    /// schema attribute plus the class attribute, in any column order;
    /// rows come back normalized to schema order.
    pub fn from_csv(schema: &Schema, reader: impl Read) -> Result<Self> {
        read_csv(schema, reader, true)
    }

    /// Like [`Dataset::from_csv`] but the class column may be absent, in
    /// which case every row is unlabeled. Used for prediction inputs.
    pub fn from_csv_unlabeled(schema: &Schema, reader: impl Read) -> Result<Self> {
        read_csv(schema, reader, false)
    }

    /// Write the dataset as CSV: attributes in schema order, class column
    /// last. Reloading the output yields an equal dataset.
    pub fn to_csv(&self, writer: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        let mut header: Vec<&str> = self.schema.attributes.iter().map(|a| a.name.as_str()).collect();
        header.push(&self.schema.class_attribute);
        w.write_record(&header)?;
        for row in &self.rows {
            let mut record: Vec<String> = Vec::with_capacity(header.len());
            for value in &row.values {
                record.push(match value {
                    Value::Categorical(s) => s.clone(),
                    // `{}` prints the shortest digits that parse back to the
                    // same f64, keeping the round trip exact.
                    Value::Continuous(x) => format!("{x}"),
                });
            }
            record.push(row.label.clone().unwrap_or_default());
            w.write_record(&record)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.to_csv(&mut buf).expect("csv into memory");
        String::from_utf8(buf).expect("csv is utf-8")
    }
}

fn validate_instance(schema: &Schema, row: &Instance) -> std::result::Result<(), (String, String)> {
    if row.values.len() != schema.num_attributes() {
        return Err((
            "<row>".into(),
            format!(
                "expected {} values, found {}",
                schema.num_attributes(),
                row.values.len()
            ),
        ));
    }
    for (attr, value) in schema.attributes.iter().zip(&row.values) {
        match (&attr.kind, value) {
            (super::schema::AttrKind::Categorical { .. }, Value::Categorical(v)) => {
                if attr.value_index(v).is_none() {
                    return Err((attr.name.clone(), format!("unknown value '{v}'")));
                }
            }
            (super::schema::AttrKind::Continuous { .. }, Value::Continuous(x)) => {
                if !x.is_finite() {
                    return Err((attr.name.clone(), format!("non-finite value {x}")));
                }
            }
            _ => {
                return Err((attr.name.clone(), "value kind does not match attribute".into()));
            }
        }
    }
    if let Some(label) = &row.label {
        if schema.class_index(label).is_none() {
            return Err((
                schema.class_attribute.clone(),
                format!("unknown class label '{label}'"),
            ));
        }
    }
    Ok(())
}

fn read_csv(schema: &Schema, reader: impl Read, require_class: bool) -> Result<Dataset> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);

    let header = r.headers()?.clone();
    let mut column_of_attr: Vec<Option<usize>> = vec![None; schema.num_attributes()];
    let mut class_column: Option<usize> = None;
    for (col, name) in header.iter().enumerate() {
        if name == schema.class_attribute {
            class_column = Some(col);
        } else if let Some(idx) = schema.attr_index(name) {
            if column_of_attr[idx].is_some() {
                return Err(Error::InvalidDataset(format!(
                    "header lists column '{name}' twice"
                )));
            }
            column_of_attr[idx] = Some(col);
        } else {
            return Err(Error::InvalidDataset(format!(
                "header column '{name}' is not in the schema"
            )));
        }
    }
    if class_column.is_none() && require_class {
        return Err(Error::InvalidDataset(format!(
            "header is missing the class column '{}'",
            schema.class_attribute
        )));
    }
    let columns: Vec<usize> = column_of_attr
        .iter()
        .enumerate()
        .map(|(idx, col)| {
            col.ok_or_else(|| {
                Error::InvalidDataset(format!(
                    "header is missing attribute '{}'",
                    schema.attributes[idx].name
                ))
            })
        })
        .collect::<Result<_>>()?;

    let mut rows = Vec::new();
    for (i, record) in r.records().enumerate() {
        let record = record?;
        // Physical line number: the header is line 1.
        let line = i + 2;
        let mut values = Vec::with_capacity(schema.num_attributes());
        for (attr, &col) in schema.attributes.iter().zip(&columns) {
            let raw = record.get(col).unwrap_or("").trim();
            if raw.is_empty() || raw == "?" {
                return Err(Error::InvalidRow {
                    row: line,
                    column: attr.name.clone(),
                    message: "missing value".into(),
                });
            }
            let value = if attr.is_categorical() {
                if attr.value_index(raw).is_none() {
                    return Err(Error::InvalidRow {
                        row: line,
                        column: attr.name.clone(),
                        message: format!("unknown value '{raw}'"),
                    });
                }
                Value::Categorical(raw.to_string())
            } else {
                let x: f64 = raw.parse().map_err(|_| Error::InvalidRow {
                    row: line,
                    column: attr.name.clone(),
                    message: format!("non-numeric value '{raw}'"),
                })?;
                if !x.is_finite() {
                    return Err(Error::InvalidRow {
                        row: line,
                        column: attr.name.clone(),
                        message: format!("non-finite value '{raw}'"),
                    });
                }
                Value::Continuous(x)
            };
            values.push(value);
        }
        let label = match class_column {
            Some(col) => {
                let raw = record.get(col).unwrap_or("").trim();
                if raw.is_empty() || raw == "?" {
                    return Err(Error::InvalidRow {
                        row: line,
                        column: schema.class_attribute.clone(),
                        message: "missing value".into(),
                    });
                }
                if schema.class_index(raw).is_none() {
                    return Err(Error::InvalidRow {
                        row: line,
                        column: schema.class_attribute.clone(),
                        message: format!("unknown class label '{raw}'"),
                    });
                }
                Some(raw.to_string())
            }
            None => None,
        };
        rows.push(Instance::new(values, label));
    }
    Dataset::new(schema.clone(), rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::schema::AttributeSpec;

    fn schema() -> Schema {
        Schema::new(
            vec![
                AttributeSpec::categorical("CS", &["Poor", "Good", "Excellent"]),
                AttributeSpec::continuous("DENS", None),
            ],
            "class",
            vec!["Polymer".into(), "Metal".into()],
        )
        .unwrap()
    }

    #[test]
    fn loads_well_formed_csv() {
        let csv = "CS,DENS,class\nPoor,1.2,Polymer\nGood,7.0,Metal\nExcellent,2.5,Polymer\nPoor,0.9,Polymer\n";
        let ds = Dataset::from_csv(&schema(), csv.as_bytes()).unwrap();
        assert_eq!(ds.len(), 4);
        assert_eq!(ds.rows()[1].label.as_deref(), Some("Metal"));
    }

    #[test]
    fn column_order_normalized_to_schema() {
        let csv = "class,DENS,CS\nPolymer,1.2,Poor\n";
        let ds = Dataset::from_csv(&schema(), csv.as_bytes()).unwrap();
        assert_eq!(ds.rows()[0].values[0], Value::Categorical("Poor".into()));
        assert_eq!(ds.rows()[0].values[1], Value::Continuous(1.2));
    }

    #[test]
    fn unknown_value_reports_row_column_value() {
        let csv = "CS,DENS,class\nPoor,1.2,Polymer\nSuperb,7.0,Metal\n";
        let err = Dataset::from_csv(&schema(), csv.as_bytes()).unwrap_err();
        assert_eq!(err.to_string(), "row 3, CS: unknown value 'Superb'");
    }

    #[test]
    fn missing_class_column_names_it() {
        let csv = "CS,DENS\nPoor,1.2\n";
        let err = Dataset::from_csv(&schema(), csv.as_bytes()).unwrap_err();
        assert!(err.to_string().contains("'class'"));
    }

    #[test]
    fn non_numeric_continuous_token_rejected() {
        let csv = "CS,DENS,class\nPoor,heavy,Polymer\n";
        let err = Dataset::from_csv(&schema(), csv.as_bytes()).unwrap_err();
        assert!(err.to_string().contains("non-numeric value 'heavy'"));
    }

    #[test]
    fn missing_value_tokens_rejected() {
        for csv in [
            "CS,DENS,class\n?,1.2,Polymer\n",
            "CS,DENS,class\nPoor,,Polymer\n",
            "CS,DENS,class\nPoor,1.2,\n",
        ] {
            let err = Dataset::from_csv(&schema(), csv.as_bytes()).unwrap_err();
            assert!(err.to_string().contains("missing value"), "{err}");
        }
    }

    #[test]
    fn nan_token_rejected() {
        let csv = "CS,DENS,class\nPoor,NaN,Polymer\n";
        let err = Dataset::from_csv(&schema(), csv.as_bytes()).unwrap_err();
        assert!(err.to_string().contains("non-finite"));
    }

    #[test]
    fn unlabeled_load_allows_missing_class_column() {
        let csv = "CS,DENS\nPoor,1.2\n";
        let ds = Dataset::from_csv_unlabeled(&schema(), csv.as_bytes()).unwrap();
        assert_eq!(ds.rows()[0].label, None);
        assert!(ds.require_labels().is_err());
    }

    #[test]
    fn csv_round_trip_is_identity() {
        let csv = "CS,DENS,class\nPoor,1.25,Polymer\nGood,7.125,Metal\nExcellent,0.30000000000000004,Polymer\n";
        let ds = Dataset::from_csv(&schema(), csv.as_bytes()).unwrap();
        let out = ds.to_csv_string();
        let back = Dataset::from_csv(&schema(), out.as_bytes()).unwrap();
        assert_eq!(ds, back);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_row() -> impl Strategy<Value = Instance> {
            (
                prop::sample::select(vec!["Poor", "Good", "Excellent"]),
                prop::num::f64::NORMAL,
                prop::sample::select(vec!["Polymer", "Metal"]),
            )
                .prop_map(|(cs, dens, label)| {
                    Instance::new(
                        vec![Value::Categorical(cs.into()), Value::Continuous(dens)],
                        Some(label.into()),
                    )
                })
        }

        proptest! {
            #[test]
            fn csv_round_trip(rows in prop::collection::vec(arb_row(), 0..32)) {
                let ds = Dataset::new(schema(), rows).unwrap();
                let csv = ds.to_csv_string();
                let back = Dataset::from_csv(&schema(), csv.as_bytes()).unwrap();
                prop_assert_eq!(&ds, &back);
                prop_assert_eq!(back.to_csv_string(), csv);
            }
        }
    }
}
