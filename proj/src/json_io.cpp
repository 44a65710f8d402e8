#include <eqsat/json_io.hpp>

#include <eqsat/error.hpp>

#include <json.hpp>

namespace eqsat {

namespace {

  using json = nlohmann::ordered_json;

  json literal_to_json(const PrimitiveValue &value)
  {
    switch (value.kind()) {
      case PrimitiveKind::Int64: return value.as_i64();
      case PrimitiveKind::Str: return value.as_str();
      case PrimitiveKind::Bool: return value.as_bool();
      case PrimitiveKind::Unit: return nullptr;
    }
    return nullptr;
  }

  PrimitiveValue literal_from_json(const json &value, PrimitiveKind kind)
  {
    switch (kind) {
      case PrimitiveKind::Int64:
        if (value.is_number_integer())
          return PrimitiveValue::i64(value.get< std::int64_t >());
        break;
      case PrimitiveKind::Str:
        if (value.is_string())
          return PrimitiveValue::str(value.get< std::string >());
        break;
      case PrimitiveKind::Bool:
        if (value.is_boolean())
          return PrimitiveValue::boolean(value.get< bool >());
        break;
      case PrimitiveKind::Unit:
        if (value.is_null())
          return PrimitiveValue::unit();
        break;
    }
    throw Error(ErrorCode::InvalidArgument,
                "literal " + value.dump() + " does not fit sort " + std::string(primitive_sort_name(kind)));
  }

  EClassId id_from_json(const json &value)
  {
    if (!value.is_number_unsigned())
      throw Error(ErrorCode::InvalidArgument, "expected a non-negative class id, got " + value.dump());
    return EClassId::from_index(value.get< std::size_t >());
  }

} // namespace

std::string export_json(const EGraph &egraph, std::span< const std::pair< std::string, EClassId > > bindings)
{
  const auto &schema = egraph.schema();
  json doc;
  auto classes = json::array();
  for (auto id : egraph.class_ids()) {
    const auto &cls = egraph.eclass(id);
    json entry;
    entry["id"] = id.value;
    entry["sort"] = schema.sort_name(cls.sort);
    auto nodes = json::array();
    for (const auto &node : cls.nodes) {
      json n;
      n["op"] = schema.function_name(node.op);
      auto children = json::array();
      for (auto child : node.children)
        children.push_back(egraph.find(child).value);
      n["children"] = std::move(children);
      if (node.literal)
        n["literal"] = literal_to_json(*node.literal);
      nodes.push_back(std::move(n));
    }
    entry["nodes"] = std::move(nodes);
    classes.push_back(std::move(entry));
  }
  doc["classes"] = std::move(classes);

  auto names = json::object();
  for (const auto &[name, id] : bindings)
    names[name] = egraph.find(id).value;
  doc["bindings"] = std::move(names);
  return doc.dump(-1, ' ', false, json::error_handler_t::replace);
}

ImportedGraph import_json(Schema schema, std::string_view document)
{
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error &err) {
    throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + err.what());
  }
  if (!doc.is_object() || !doc.contains("classes") || !doc.contains("bindings"))
    throw Error(ErrorCode::InvalidArgument, "expected an object with \"classes\" and \"bindings\"");

  try {
    std::vector< ClassSnapshot > snapshots;
    for (const auto &cls : doc.at("classes")) {
      ClassSnapshot snap;
      snap.id = id_from_json(cls.at("id"));
      snap.sort = schema.sort_id(cls.at("sort").get< std::string >());
      for (const auto &n : cls.at("nodes")) {
        ENode node;
        node.op = schema.function_id(n.at("op").get< std::string >());
        for (const auto &child : n.at("children"))
          node.children.push_back(id_from_json(child));
        if (auto kind = schema.function(node.op).literal_of) {
          if (!n.contains("literal"))
            throw Error(ErrorCode::InvalidArgument, "literal node `" + schema.function_name(node.op) + "` has no value");
          node.literal = literal_from_json(n.at("literal"), *kind);
        }
        snap.nodes.push_back(std::move(node));
      }
      snapshots.push_back(std::move(snap));
    }

    ImportedGraph out{EGraph::restore(std::move(schema), snapshots), {}};
    for (const auto &[name, id] : doc.at("bindings").items()) {
      auto cls = id_from_json(id);
      if (cls.index() >= out.egraph.id_count() || out.egraph.eclass(cls).nodes.empty())
        throw Error(ErrorCode::InvalidId, "binding `" + name + "` refers to a missing e-class");
      out.bindings.emplace_back(name, cls);
    }
    return out;
  } catch (const json::exception &err) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed e-graph document: ") + err.what());
  }
}

} // namespace eqsat
