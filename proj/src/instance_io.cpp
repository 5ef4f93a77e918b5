#include "coprime_lab/instance_io.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "coprime_lab/errors.hpp"

namespace cplab {

using nlohmann::json;

namespace {

std::string vector_key(const AVector& u) {
  std::string s;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(u[i]);
  }
  return s;
}

AVector parse_vector_key(const std::string& key, std::uint32_t k, std::uint32_t p) {
  AVector u;
  std::stringstream in(key);
  std::string part;
  while (std::getline(in, part, ',')) {
    std::size_t used = 0;
    int v = -1;
    try {
      v = std::stoi(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != part.size() || v < 0 || static_cast<std::uint32_t>(v) >= p)
      throw ValidationError("action[\"" + key + "\"]: exponent vector entries must be digits below p");
    u.push_back(v);
  }
  if (u.size() != k) throw ValidationError("action[\"" + key + "\"]: expected " + std::to_string(k) + " entries");
  return u;
}

Perm parse_perm(const json& j, std::size_t degree, const std::string& where) {
  if (!j.is_array()) throw ValidationError(where + ": expected an image array");
  std::vector<Perm::Point> img;
  for (const auto& x : j) {
    if (!x.is_number_integer() || x.get<std::int64_t>() < 0)
      throw ValidationError(where + ": images must be non-negative integers");
    img.push_back(x.get<Perm::Point>());
  }
  if (img.size() != degree) throw ValidationError(where + ": image array has length " + std::to_string(img.size()) +
                                                  ", expected " + std::to_string(degree));
  try {
    return Perm(std::move(img));
  } catch (const ValidationError& e) {
    throw ValidationError(where + ": " + e.what());
  }
}

const json& field(const json& doc, const char* name, const std::string& where) {
  auto it = doc.find(name);
  if (it == doc.end()) throw ValidationError(where + ": missing field \"" + name + "\"");
  return *it;
}

std::uint32_t positive_int(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<std::int64_t>() <= 0 || j.get<std::int64_t>() > 1'000'000)
    throw ValidationError(where + ": expected a positive integer");
  return j.get<std::uint32_t>();
}

}  // namespace

json instance_to_json(const ActionSetup& setup) {
  const Group& g = setup.group();
  json gens = json::array();
  for (const auto& x : g.generators()) gens.push_back(x.images());
  json action = json::object();
  for (std::uint32_t i = 0; i < setup.k(); ++i) {
    AVector e(setup.k(), 0);
    e[i] = 1;
    json row = json::object();
    const auto& images = setup.basis(i).generator_images();
    for (std::size_t s = 0; s < images.size(); ++s) row[std::to_string(s)] = images[s].images();
    action[vector_key(e)] = std::move(row);
  }
  return json{{"schema", kInstanceSchema},
              {"p", setup.p()},
              {"k", setup.k()},
              {"group", {{"degree", g.degree()}, {"generators", std::move(gens)}}},
              {"action", std::move(action)}};
}

ActionSetup instance_from_json(const json& doc) {
  if (!doc.is_object()) throw ValidationError("instance: expected a JSON object");
  const json& schema = field(doc, "schema", "instance");
  if (schema != kInstanceSchema) throw ValidationError("schema: unsupported version " + schema.dump());
  const std::uint32_t p = positive_int(field(doc, "p", "instance"), "p");
  const std::uint32_t k = positive_int(field(doc, "k", "instance"), "k");
  if (!is_prime(p)) throw ValidationError("p: " + std::to_string(p) + " is not prime");

  const json& group = field(doc, "group", "instance");
  const std::size_t degree = positive_int(field(group, "degree", "group"), "group.degree");
  const json& gen_list = field(group, "generators", "group");
  if (!gen_list.is_array()) throw ValidationError("group.generators: expected an array");
  std::vector<Perm> file_gens;
  for (std::size_t s = 0; s < gen_list.size(); ++s)
    file_gens.push_back(parse_perm(gen_list[s], degree, "group.generators[" + std::to_string(s) + "]"));

  // images per basis vector, indexed by file generator
  std::vector<std::vector<Perm>> basis(k, file_gens);
  std::vector<std::pair<AVector, std::vector<Perm>>> extra;
  const json& action = field(doc, "action", "instance");
  if (!action.is_object()) throw ValidationError("action: expected an object");
  for (const auto& [key, row] : action.items()) {
    const std::string where = "action[\"" + key + "\"]";
    const AVector u = parse_vector_key(key, k, p);
    if (!row.is_object()) throw ValidationError(where + ": expected an object of generator images");
    std::vector<Perm> images = file_gens;
    for (const auto& [gi, img] : row.items()) {
      std::size_t idx = 0, used = 0;
      try {
        idx = std::stoul(gi, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != gi.size() || idx >= file_gens.size())
        throw ValidationError(where + "[\"" + gi + "\"]: no such generator index");
      images[idx] = parse_perm(img, degree, where + "[\"" + gi + "\"]");
    }
    int weight = 0, pos = -1;
    for (std::size_t i = 0; i < u.size(); ++i)
      if (u[i]) weight += u[i], pos = static_cast<int>(i);
    if (weight == 1)
      basis[static_cast<std::size_t>(pos)] = std::move(images);
    else
      extra.emplace_back(u, std::move(images));
  }

  // The group drops identity generators; their images have to be trivial too.
  std::vector<std::size_t> kept;
  for (std::size_t s = 0; s < file_gens.size(); ++s) {
    if (!file_gens[s].is_identity()) {
      kept.push_back(s);
      continue;
    }
    for (std::uint32_t i = 0; i < k; ++i)
      if (!basis[i][s].is_identity())
        throw ValidationError("action: generator " + std::to_string(s) + " is the identity but has a non-trivial image");
  }
  auto restrict = [&](const std::vector<Perm>& all) {
    std::vector<Perm> out;
    for (auto s : kept) out.push_back(all[s]);
    return out;
  };
  std::vector<std::vector<Perm>> images;
  for (const auto& row : basis) images.push_back(restrict(row));
  ActionSetup setup(Group(degree, file_gens), p, k, std::move(images));

  const SetupReport report = validate_setup(setup);
  if (!report.ok()) {
    std::string msg = "instance failed validation:";
    for (const auto& v : report.violations) msg += "\n  " + v;
    throw ValidationError(msg);
  }
  for (const auto& [u, all] : extra) {
    const auto imgs = restrict(all);
    const auto& phi = setup.phi(u);
    for (std::size_t s = 0; s < imgs.size(); ++s)
      if (phi(setup.group().generators()[s]) != imgs[s])
        throw ValidationError("action[\"" + vector_key(u) + "\"]: images disagree with the basis action");
  }
  return setup;
}

void save_instance(const std::filesystem::path& path, const ActionSetup& setup) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << instance_to_json(setup).dump(1) << '\n';
}

ActionSetup load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
  try {
    return instance_from_json(doc);
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

}  // namespace cplab
