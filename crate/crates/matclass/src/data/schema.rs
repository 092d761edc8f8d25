//! Attribute schemas: the vocabulary a dataset must conform to.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Kind of a feature attribute.
#[derive(Debug, Clone, PartialEq)]
pub enum AttrKind {
    /// Ordered list of admissible values. The order is significant: ordinal
    /// scales and branch layouts follow it.
    Categorical { values: Vec<String> },
    Continuous { unit: Option<String> },
}

/// One feature attribute: a name plus its kind.
#[derive(Debug, Clone, PartialEq)]
pub struct AttributeSpec {
    pub name: String,
    pub kind: AttrKind,
}

impl AttributeSpec {
    pub fn categorical<S: Into<String>>(name: S, values: &[&str]) -> Self {
        Self {
            name: name.into(),
            kind: AttrKind::Categorical {
                values: values.iter().map(|v| v.to_string()).collect(),
            },
        }
    }

    pub fn continuous<S: Into<String>>(name: S, unit: Option<&str>) -> Self {
        Self {
            name: name.into(),
            kind: AttrKind::Continuous {
                unit: unit.map(|u| u.to_string()),
            },
        }
    }

    pub fn is_categorical(&self) -> bool {
        matches!(self.kind, AttrKind::Categorical { .. })
    }

    /// Value list for categorical attributes, `None` for continuous ones.
    pub fn values(&self) -> Option<&[String]> {
        match &self.kind {
            AttrKind::Categorical { values } => Some(values),
            AttrKind::Continuous { .. } => None,
        }
    }

    pub fn value_index(&self, value: &str) -> Option<usize> {
        self.values()?.iter().position(|v| v == value)
    }
}

/// Feature attributes plus the class attribute and its label list.
///
/// Attribute order and class-label order are significant; tie-breaking in
/// the classifiers follows them. Serialization goes through the schema
/// document layout, so embedded schemas look exactly like schema files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SchemaDoc", into = "SchemaDoc")]
pub struct Schema {
    pub attributes: Vec<AttributeSpec>,
    pub class_attribute: String,
    pub class_labels: Vec<String>,
}

impl Schema {
    pub fn new(
        attributes: Vec<AttributeSpec>,
        class_attribute: impl Into<String>,
        class_labels: Vec<String>,
    ) -> Result<Self> {
        let schema = Self {
            attributes,
            class_attribute: class_attribute.into(),
            class_labels,
        };
        schema.validate()?;
        Ok(schema)
    }

    fn validate(&self) -> Result<()> {
        if self.attributes.is_empty() {
            return Err(Error::InvalidSchema(
                "schema declares no feature attributes".into(),
            ));
        }
        for (i, attr) in self.attributes.iter().enumerate() {
            if attr.name.is_empty() {
                return Err(Error::InvalidSchema(format!(
                    "attribute at position {i} has an empty name"
                )));
            }
            if self.attributes[..i].iter().any(|a| a.name == attr.name) {
                return Err(Error::InvalidSchema(format!(
                    "duplicate attribute name '{}'",
                    attr.name
                )));
            }
            if let Some(values) = attr.values() {
                if values.is_empty() {
                    return Err(Error::InvalidSchema(format!(
                        "categorical attribute '{}' has an empty value list",
                        attr.name
                    )));
                }
                for (j, v) in values.iter().enumerate() {
                    if values[..j].contains(v) {
                        return Err(Error::InvalidSchema(format!(
                            "attribute '{}' lists value '{}' twice",
                            attr.name, v
                        )));
                    }
                }
            }
        }
        if self.class_attribute.is_empty() {
            return Err(Error::InvalidSchema("class attribute name is empty".into()));
        }
        if self.attributes.iter().any(|a| a.name == self.class_attribute) {
            return Err(Error::InvalidSchema(format!(
                "class attribute '{}' collides with a feature attribute",
                self.class_attribute
            )));
        }
        if self.class_labels.is_empty() {
            return Err(Error::InvalidSchema("class label list is empty".into()));
        }
        for (i, label) in self.class_labels.iter().enumerate() {
            if label.is_empty() {
                return Err(Error::InvalidSchema(format!(
                    "class label at position {i} is empty"
                )));
            }
            if self.class_labels[..i].contains(label) {
                return Err(Error::InvalidSchema(format!(
                    "duplicate class label '{label}'"
                )));
            }
        }
        Ok(())
    }

    pub fn attr_index(&self, name: &str) -> Option<usize> {
        self.attributes.iter().position(|a| a.name == name)
    }

    pub fn class_index(&self, label: &str) -> Option<usize> {
        self.class_labels.iter().position(|l| l == label)
    }

    pub fn num_attributes(&self) -> usize {
        self.attributes.len()
    }

    pub fn num_classes(&self) -> usize {
        self.class_labels.len()
    }

    /// Parse and validate a schema document (see the JSON layout in `SchemaDoc`).
    pub fn from_json(bytes: &[u8]) -> Result<Self> {
        let doc: SchemaDoc = serde_json::from_slice(bytes)?;
        doc.try_into()
    }

    pub fn to_json(&self) -> String {
        let doc = SchemaDoc::from(self);
        // Serialization of a plain struct never fails.
        serde_json::to_string_pretty(&doc).expect("schema serialization")
    }
}

/// On-disk schema document:
/// `{"class_attribute": ..., "class_labels": [...], "attributes": [{"name", "kind", "values"?, "unit"?}]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
struct SchemaDoc {
    class_attribute: String,
    class_labels: Vec<String>,
    attributes: Vec<AttrDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct AttrDoc {
    name: String,
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    values: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    unit: Option<String>,
}

impl TryFrom<SchemaDoc> for Schema {
    type Error = Error;

    fn try_from(doc: SchemaDoc) -> Result<Self> {
        let mut attributes = Vec::with_capacity(doc.attributes.len());
        for attr in doc.attributes {
            let kind = match attr.kind.as_str() {
                "categorical" => {
                    let values = attr.values.ok_or_else(|| {
                        Error::InvalidSchema(format!(
                            "categorical attribute '{}' is missing its value list",
                            attr.name
                        ))
                    })?;
                    AttrKind::Categorical { values }
                }
                "continuous" => AttrKind::Continuous { unit: attr.unit },
                other => {
                    return Err(Error::InvalidSchema(format!(
                        "attribute '{}' has unknown kind '{}'",
                        attr.name, other
                    )))
                }
            };
            attributes.push(AttributeSpec {
                name: attr.name,
                kind,
            });
        }
        Schema::new(attributes, doc.class_attribute, doc.class_labels)
    }
}

impl From<Schema> for SchemaDoc {
    fn from(schema: Schema) -> Self {
        SchemaDoc::from(&schema)
    }
}

impl From<&Schema> for SchemaDoc {
    fn from(schema: &Schema) -> Self {
        SchemaDoc {
            class_attribute: schema.class_attribute.clone(),
            class_labels: schema.class_labels.clone(),
            attributes: schema
                .attributes
                .iter()
                .map(|a| match &a.kind {
                    AttrKind::Categorical { values } => AttrDoc {
                        name: a.name.clone(),
                        kind: "categorical".into(),
                        values: Some(values.clone()),
                        unit: None,
                    },
                    AttrKind::Continuous { unit } => AttrDoc {
                        name: a.name.clone(),
                        kind: "continuous".into(),
                        values: None,
                        unit: unit.clone(),
                    },
                })
                .collect(),
        }
    }
}
