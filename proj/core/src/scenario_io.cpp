#include "ulik/scenario_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ulik/error.hpp"

namespace ulik {
namespace {

using json = nlohmann::json;

[[noreturn]] void schema_fail(const std::string& path, const std::string& why) {
  throw Error(Errc::kSchemaError, (path.empty() ? std::string("document") : path) + ": " + why);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

class Reader {
 public:
  explicit Reader(bool lenient) : lenient_(lenient) {}

  const json& object(const json& doc, const std::string& path,
                     std::initializer_list<const char*> allowed) const {
    if (!doc.is_object()) schema_fail(path, "expected an object");
    if (!lenient_) {
      const std::set<std::string> known(allowed.begin(), allowed.end());
      for (const auto& item : doc.items())
        if (!known.contains(item.key())) schema_fail(join(path, item.key()), "unknown field");
    }
    return doc;
  }

  static const json& field(const json& obj, const std::string& path, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end()) schema_fail(join(path, key), "missing required field");
    return *it;
  }

  static double number(const json& obj, const std::string& path, const char* key) {
    const json& v = field(obj, path, key);
    if (!v.is_number()) schema_fail(join(path, key), "expected a number");
    return v.get<double>();
  }

  static double number_or(const json& obj, const std::string& path, const char* key,
                          double fallback) {
    return obj.contains(key) ? number(obj, path, key) : fallback;
  }

  static std::int64_t integer(const json& obj, const std::string& path, const char* key) {
    const json& v = field(obj, path, key);
    if (!v.is_number_integer()) schema_fail(join(path, key), "expected an integer");
    return v.get<std::int64_t>();
  }

  static Point point(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      schema_fail(path, "expected [x, y]");
    return {v[0].get<double>(), v[1].get<double>()};
  }

  Region region(const json& doc, const std::string& path) const {
    if (!doc.is_object()) schema_fail(path, "expected a region object");
    const json& type_v = field(doc, path, "type");
    if (!type_v.is_string()) schema_fail(join(path, "type"), "expected a string");
    const std::string type = type_v.get<std::string>();
    try {
      if (type == "disk") {
        object(doc, path, {"type", "center", "radius"});
        return Region::disk(point(field(doc, path, "center"), join(path, "center")),
                            number(doc, path, "radius"));
      }
      if (type == "ellipse") {
        object(doc, path, {"type", "center", "semi_major", "semi_minor", "rotation"});
        return Region::ellipse(point(field(doc, path, "center"), join(path, "center")),
                               number(doc, path, "semi_major"), number(doc, path, "semi_minor"),
                               number_or(doc, path, "rotation", 0.0));
      }
      if (type == "polygon") {
        object(doc, path, {"type", "vertices"});
        const json& vs = field(doc, path, "vertices");
        if (!vs.is_array()) schema_fail(join(path, "vertices"), "expected an array");
        std::vector<Point> vertices;
        for (std::size_t i = 0; i < vs.size(); ++i)
          vertices.push_back(point(vs[i], join(path, "vertices") + "[" + std::to_string(i) + "]"));
        return Region::polygon(std::move(vertices));
      }
      if (type == "halfplane") {
        object(doc, path, {"type", "point", "normal"});
        return Region::half_plane(point(field(doc, path, "point"), join(path, "point")),
                                  point(field(doc, path, "normal"), join(path, "normal")));
      }
      if (type == "intersection" || type == "union") {
        object(doc, path, {"type", "children"});
        const json& cs = field(doc, path, "children");
        if (!cs.is_array() || cs.empty())
          schema_fail(join(path, "children"), "expected a non-empty array");
        std::vector<Region> children;
        for (std::size_t i = 0; i < cs.size(); ++i)
          children.push_back(region(cs[i], join(path, "children") + "[" + std::to_string(i) + "]"));
        return type == "union" ? Region::union_of(std::move(children))
                               : Region::intersection(std::move(children));
      }
      if (type == "difference") {
        object(doc, path, {"type", "left", "right"});
        return Region::difference(region(field(doc, path, "left"), join(path, "left")),
                                  region(field(doc, path, "right"), join(path, "right")));
      }
    } catch (const Error& e) {
      if (e.code() != Errc::kInvalidGeometry) throw;
      throw Error(Errc::kValidationError, path + ": " + e.detail());
    }
    schema_fail(join(path, "type"), "unknown region type '" + type + "'");
  }

 private:
  bool lenient_;
};

json point_json(Point p) { return json::array({p.x, p.y}); }

json region_json(const Region& region) {
  return std::visit(
      [](const auto& shape) -> json {
        using T = std::decay_t<decltype(shape)>;
        json out;
        if constexpr (std::is_same_v<T, Disk>) {
          out = {{"type", "disk"}, {"center", point_json(shape.center)}, {"radius", shape.radius}};
        } else if constexpr (std::is_same_v<T, Ellipse>) {
          out = {{"type", "ellipse"},
                 {"center", point_json(shape.center)},
                 {"semi_major", shape.semi_major},
                 {"semi_minor", shape.semi_minor},
                 {"rotation", shape.rotation}};
        } else if constexpr (std::is_same_v<T, Polygon>) {
          json vs = json::array();
          for (Point p : shape.vertices) vs.push_back(point_json(p));
          out = {{"type", "polygon"}, {"vertices", vs}};
        } else if constexpr (std::is_same_v<T, HalfPlane>) {
          out = {{"type", "halfplane"},
                 {"point", point_json(shape.point)},
                 {"normal", point_json(shape.normal)}};
        } else if constexpr (std::is_same_v<T, Difference>) {
          out = {{"type", "difference"},
                 {"left", region_json(shape.left)},
                 {"right", region_json(shape.right)}};
        } else {
          json cs = json::array();
          for (const Region& c : shape.children) cs.push_back(region_json(c));
          out = {{"type", std::is_same_v<T, Union> ? "union" : "intersection"}, {"children", cs}};
        }
        return out;
      },
      region.node().shape);
}

}  // namespace

NetworkScenario load_scenario(std::string_view json_text, const LoadOptions& options) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::kSchemaError, std::string("invalid JSON: ") + e.what());
  }
  const Reader r(options.lenient);
  r.object(doc, "", {"format_version", "victim_cell_id", "min_bs_ue_distance_km", "channel",
                     "power", "cells", "metadata"});
  const std::int64_t version = Reader::integer(doc, "", "format_version");
  if (version != kScenarioFormatVersion)
    schema_fail("format_version", "unsupported version " + std::to_string(version));
  const std::int64_t victim = Reader::integer(doc, "", "victim_cell_id");
  const double min_d =
      Reader::number_or(doc, "", "min_bs_ue_distance_km", kDefaultMinBsUeDistanceKm);

  const json& ch = r.object(Reader::field(doc, "", "channel"), "channel",
                            {"A_db", "alpha", "sigma_shad_sq", "n_antennas"});
  ChannelParams channel;
  channel.a_db = Reader::number(ch, "channel", "A_db");
  channel.alpha = Reader::number(ch, "channel", "alpha");
  channel.sigma_shad_sq = Reader::number(ch, "channel", "sigma_shad_sq");
  channel.n_antennas =
      ch.contains("n_antennas") ? static_cast<int>(Reader::integer(ch, "channel", "n_antennas")) : 1;

  const json& pw = r.object(Reader::field(doc, "", "power"), "power", {"p0_dbm", "eta"});
  PowerControl power{Reader::number(pw, "power", "p0_dbm"), Reader::number(pw, "power", "eta")};

  std::map<std::string, std::string> metadata;
  if (doc.contains("metadata")) {
    const json& md = doc["metadata"];
    if (!md.is_object()) schema_fail("metadata", "expected an object");
    for (const auto& item : md.items()) {
      if (!item.value().is_string()) schema_fail("metadata." + item.key(), "expected a string");
      metadata[item.key()] = item.value().get<std::string>();
    }
  }

  const json& cells_doc = Reader::field(doc, "", "cells");
  if (!cells_doc.is_array()) schema_fail("cells", "expected an array");
  std::vector<CellSpec> cells;
  for (std::size_t i = 0; i < cells_doc.size(); ++i) {
    const std::string path = "cells[" + std::to_string(i) + "]";
    const json& c = r.object(cells_doc[i], path, {"id", "bs_km", "region"});
    const std::int64_t id = Reader::integer(c, path, "id");
    const Point bs = Reader::point(Reader::field(c, path, "bs_km"), join(path, "bs_km"));
    try {
      cells.push_back({id, bs, r.region(Reader::field(c, path, "region"), join(path, "region"))});
    } catch (const Error& e) {
      if (e.code() != Errc::kValidationError) throw;
      throw Error(Errc::kValidationError, "cell " + std::to_string(id) + ": " + e.detail());
    }
  }
  return make_scenario(std::move(cells), victim, channel, power, min_d, std::move(metadata));
}

NetworkScenario load_scenario_file(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kIoError, "cannot open scenario file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return load_scenario(text.str(), options);
}

std::string save_scenario(const NetworkScenario& scenario) {
  json cells = json::array();
  for (const Cell& c : scenario.cells)
    cells.push_back({{"id", c.id}, {"bs_km", point_json(c.bs)}, {"region", region_json(c.region)}});
  json doc = {{"format_version", kScenarioFormatVersion},
              {"victim_cell_id", scenario.victim_cell_id},
              {"min_bs_ue_distance_km", scenario.min_bs_ue_distance_km},
              {"channel",
               {{"A_db", scenario.channel.a_db},
                {"alpha", scenario.channel.alpha},
                {"sigma_shad_sq", scenario.channel.sigma_shad_sq},
                {"n_antennas", scenario.channel.n_antennas}}},
              {"power", {{"p0_dbm", scenario.power.p0_dbm}, {"eta", scenario.power.eta}}},
              {"cells", cells}};
  if (!scenario.metadata.empty()) doc["metadata"] = scenario.metadata;
  return doc.dump(2) + "\n";
}

void save_scenario_file(const NetworkScenario& scenario, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(Errc::kIoError, "cannot open " + path.string() + " for writing");
  out << save_scenario(scenario);
  if (!out) throw Error(Errc::kIoError, "failed writing " + path.string());
}

}  // namespace ulik
