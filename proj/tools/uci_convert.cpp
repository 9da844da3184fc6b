// Converts raw UCI datasets to the FIMI transaction + label files consumed
// by sigpat. Two converters are provided:
//
//   mushroom  agaricus-lepiota.data -> one item per (attribute, value) pair,
//             the edible/poisonous class becomes the label (p = 1).
//   inetads   ad.data -> the first four attributes (three continuous, one
//             binary with missing values) are discarded; the remaining
//             binary attributes become items where the value is 1, the
//             trailing ad./nonad. class becomes the label (ad = 1).
//
// Item ids are dense and assigned deterministically, so converted files are
// bit-reproducible. Relabeling items never changes supports or testable
// counts, which is what the pipeline consumes.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(trim(field));
  return fields;
}

int convert_mushroom(const std::string& in_path, const std::string& dat_path,
                     const std::string& lab_path) {
  std::ifstream in(in_path);
  if (!in) {
    std::cerr << "cannot open " << in_path << "\n";
    return 2;
  }
  std::vector<std::vector<std::pair<int, std::string>>> records;
  std::vector<int> labels;
  std::map<std::pair<int, std::string>, int> item_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto fields = split_csv(t);
    if (fields.size() < 2) {
      std::cerr << "line " << line_no << ": expected class,attributes\n";
      return 2;
    }
    if (fields[0] == "p") {
      labels.push_back(1);
    } else if (fields[0] == "e") {
      labels.push_back(0);
    } else {
      std::cerr << "line " << line_no << ": class must be 'e' or 'p', got '"
                << fields[0] << "'\n";
      return 2;
    }
    std::vector<std::pair<int, std::string>> rec;
    for (std::size_t f = 1; f < fields.size(); ++f) {
      rec.emplace_back(static_cast<int>(f - 1), fields[f]);
      item_ids[rec.back()];  // register the pair
    }
    records.push_back(std::move(rec));
  }
  int next = 0;
  for (auto& [pair, id] : item_ids) id = next++;

  std::ofstream dat(dat_path);
  std::ofstream lab(lab_path);
  if (!dat || !lab) {
    std::cerr << "cannot write output files\n";
    return 2;
  }
  for (std::size_t r = 0; r < records.size(); ++r) {
    std::vector<int> items;
    for (const auto& pair : records[r]) items.push_back(item_ids.at(pair));
    std::sort(items.begin(), items.end());
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i != 0) dat << ' ';
      dat << items[i];
    }
    dat << '\n';
    lab << labels[r] << '\n';
  }
  std::cerr << "mushroom: N=" << records.size() << " P=" << item_ids.size()
            << " positives=" << std::count(labels.begin(), labels.end(), 1)
            << "\n";
  return 0;
}

int convert_inetads(const std::string& in_path, const std::string& dat_path,
                    const std::string& lab_path) {
  std::ifstream in(in_path);
  if (!in) {
    std::cerr << "cannot open " << in_path << "\n";
    return 2;
  }
  std::ofstream dat(dat_path);
  std::ofstream lab(lab_path);
  if (!dat || !lab) {
    std::cerr << "cannot write output files\n";
    return 2;
  }
  std::string line;
  std::size_t line_no = 0;
  std::size_t records = 0;
  std::size_t positives = 0;
  std::size_t max_item = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto fields = split_csv(t);
    if (fields.size() < 6) {
      std::cerr << "line " << line_no << ": too few fields ("
                << fields.size() << ")\n";
      return 2;
    }
    const std::string& cls = fields.back();
    int label;
    if (cls == "ad.") {
      label = 1;
    } else if (cls == "nonad.") {
      label = 0;
    } else {
      std::cerr << "line " << line_no << ": class must be 'ad.' or 'nonad.'\n";
      return 2;
    }
    bool first = true;
    for (std::size_t f = 4; f + 1 < fields.size(); ++f) {
      if (fields[f] == "1") {
        const std::size_t item = f - 4;
        max_item = std::max(max_item, item);
        if (!first) dat << ' ';
        dat << item;
        first = false;
      } else if (fields[f] != "0") {
        std::cerr << "line " << line_no << ": binary attribute " << f
                  << " has value '" << fields[f] << "'\n";
        return 2;
      }
    }
    dat << '\n';
    lab << label << '\n';
    ++records;
    positives += label;
  }
  std::cerr << "inetads: N=" << records << " item ids up to " << max_item
            << " positives=" << positives << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 5) {
    std::cerr << "usage: " << argv[0]
              << " {mushroom|inetads} <input.csv> <out.dat> <out.lab>\n";
    return 2;
  }
  const std::string kind = argv[1];
  if (kind == "mushroom") return convert_mushroom(argv[2], argv[3], argv[4]);
  if (kind == "inetads") return convert_inetads(argv[2], argv[3], argv[4]);
  std::cerr << "unknown dataset kind '" << kind << "'\n";
  return 2;
}
