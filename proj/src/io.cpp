#include "kdv/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "kdv/errors.hpp"

namespace kdv {

namespace {

std::vector<double> number_array(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) throw InvalidData(std::string("missing field \"") + key + "\"");
  const auto& arr = doc.at(key);
  if (!arr.is_array()) throw InvalidData(std::string("field \"") + key + "\" must be an array");
  std::vector<double> out;
  out.reserve(arr.size());
  for (const auto& v : arr) {
    if (!v.is_number()) {
      throw InvalidData(std::string("field \"") + key + "\" must contain only numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

SpectralData parse_spectral_data(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidData(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidData("spectral data must be a JSON object");

  SpectralData data;
  data.kappas = number_array(doc, "kappas");
  data.c = number_array(doc, "c");
  if (doc.contains("t")) {
    if (!doc["t"].is_number()) throw InvalidData("field \"t\" must be a number");
    data.t = doc["t"].get<double>();
  }
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) throw InvalidData("field \"label\" must be a string");
    data.label = doc["label"].get<std::string>();
  }
  return data;
}

SpectralData load_spectral_data(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidData("cannot open input file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spectral_data(buf.str());
}

std::string to_json(const SpectralData& data) {
  nlohmann::json doc;
  doc["kappas"] = data.kappas;
  doc["c"] = data.c;
  doc["t"] = data.t;
  if (!data.label.empty()) doc["label"] = data.label;
  return doc.dump(2);
}

}  // namespace kdv
