// Copyright (C) 2026 vbmsim contributors
// SPDX-License-Identifier: Apache-2.0
//
#include "vbmsim/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <nlohmann/json.hpp>

namespace vbmsim::dataset {

namespace pt = boost::property_tree;
using nlohmann::json;

int class_index(ObjectClass c) {
  switch (c) {
    case ObjectClass::Person: return 0;
    case ObjectClass::CellPhone: return 1;
    case ObjectClass::Laptop: return 2;
  }
  throw std::logic_error("class_index: bad enum");
}

ObjectClass class_from_index(int idx) {
  switch (idx) {
    case 0: return ObjectClass::Person;
    case 1: return ObjectClass::CellPhone;
    case 2: return ObjectClass::Laptop;
  }
  throw std::invalid_argument("class_from_index: index must be 0, 1 or 2");
}

const char* class_tag(ObjectClass c) {
  switch (c) {
    case ObjectClass::Person: return "person";
    case ObjectClass::CellPhone: return "P";
    case ObjectClass::Laptop: return "L";
  }
  throw std::logic_error("class_tag: bad enum");
}

std::optional<ObjectClass> class_from_tag(const std::string& tag) {
  if (tag == "person") return ObjectClass::Person;
  if (tag == "P") return ObjectClass::CellPhone;
  if (tag == "L") return ObjectClass::Laptop;
  return std::nullopt;
}

void BBox::validate() const {
  if (!(xmin < xmax) || !(ymin < ymax)) {
    throw std::invalid_argument("BBox: degenerate box");
  }
}

double iou(const BBox& a, const BBox& b) {
  a.validate();
  b.validate();
  const double ix = std::max(0.0, std::min(a.xmax, b.xmax) - std::max(a.xmin, b.xmin));
  const double iy = std::max(0.0, std::min(a.ymax, b.ymax) - std::max(a.ymin, b.ymin));
  const double inter = ix * iy;
  const double uni = a.area() + b.area() - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

int SampleRecord::person_count() const {
  return static_cast<int>(std::count_if(
      objects.begin(), objects.end(),
      [](const LabeledObject& o) { return o.cls == ObjectClass::Person; }));
}

bool SampleRecord::has_class(ObjectClass c) const {
  return std::any_of(objects.begin(), objects.end(),
                     [c](const LabeledObject& o) { return o.cls == c; });
}

double SampleRecord::max_object_distance() const {
  double m = 0.0;
  for (const LabeledObject& o : objects) m = std::max(m, o.distance_m);
  return m;
}

SampleRecord parse_label_file(const std::string& xml_text) {
  pt::ptree tree;
  try {
    std::istringstream in(xml_text);
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    throw std::invalid_argument(std::string("label: malformed markup: ") +
                                e.what());
  }
  const auto annotation = tree.get_child_optional("annotation");
  if (!annotation) {
    throw std::invalid_argument("label: missing <annotation> root");
  }
  SampleRecord rec;
  try {
    rec.width = annotation->get<int>("size.width");
    rec.height = annotation->get<int>("size.height");
    rec.channels = annotation->get<int>("size.depth");
  } catch (const pt::ptree_error& e) {
    throw std::invalid_argument(std::string("label: bad <size>: ") + e.what());
  }
  if (rec.width <= 0 || rec.height <= 0) {
    throw std::invalid_argument("label: non-positive image size");
  }
  for (const auto& [key, node] : *annotation) {
    if (key != "object") continue;
    LabeledObject obj;
    const std::string tag = node.get<std::string>("name", "");
    const auto cls = class_from_tag(tag);
    if (!cls) {
      throw std::invalid_argument("label: unknown class tag: " + tag);
    }
    obj.cls = *cls;
    try {
      obj.bbox.xmin = node.get<double>("bndbox.xmin");
      obj.bbox.ymin = node.get<double>("bndbox.ymin");
      obj.bbox.xmax = node.get<double>("bndbox.xmax");
      obj.bbox.ymax = node.get<double>("bndbox.ymax");
    } catch (const pt::ptree_error& e) {
      throw std::invalid_argument(std::string("label: bad <bndbox>: ") +
                                  e.what());
    }
    obj.bbox.validate();
    if (obj.bbox.xmin < 0.0 || obj.bbox.ymin < 0.0 ||
        obj.bbox.xmax > rec.width || obj.bbox.ymax > rec.height) {
      throw std::invalid_argument("label: box outside image bounds");
    }
    rec.objects.push_back(obj);
  }
  return rec;
}

std::string serialize_label_file(const SampleRecord& rec) {
  std::ostringstream out;
  out << "<annotation>\n";
  out << "  <size><width>" << rec.width << "</width><height>" << rec.height
      << "</height><depth>" << rec.channels << "</depth></size>\n";
  for (const LabeledObject& o : rec.objects) {
    out << "  <object><name>" << class_tag(o.cls) << "</name><bndbox>"
        << "<xmin>" << o.bbox.xmin << "</xmin>"
        << "<ymin>" << o.bbox.ymin << "</ymin>"
        << "<xmax>" << o.bbox.xmax << "</xmax>"
        << "<ymax>" << o.bbox.ymax << "</ymax>"
        << "</bndbox></object>\n";
  }
  out << "</annotation>\n";
  return out.str();
}

std::vector<double> parse_distance_file(const std::string& json_text, int width,
                                        int height) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("distance: malformed document: ") +
                                e.what());
  }
  if (!doc.is_object() || !doc.contains("width") || !doc.contains("height") ||
      !doc.contains("distances")) {
    throw std::invalid_argument("distance: missing width/height/distances");
  }
  if (doc["width"].get<int>() != width || doc["height"].get<int>() != height) {
    throw std::invalid_argument("distance: declared size mismatch");
  }
  const auto& arr = doc["distances"];
  if (!arr.is_array() ||
      arr.size() != static_cast<std::size_t>(width) * height) {
    throw std::invalid_argument("distance: length mismatch");
  }
  std::vector<double> out;
  out.reserve(arr.size());
  for (const auto& v : arr) {
    if (!v.is_number()) {
      throw std::invalid_argument("distance: non-numeric entry");
    }
    const double d = v.get<double>();
    if (!std::isfinite(d) || d < 0.0) {
      throw std::invalid_argument("distance: entries must be finite and >= 0");
    }
    out.push_back(d);
  }
  return out;
}

std::string serialize_distance_file(const std::vector<double>& distances,
                                    int width, int height) {
  if (distances.size() != static_cast<std::size_t>(width) * height) {
    throw std::invalid_argument("distance: length mismatch");
  }
  json doc;
  doc["width"] = width;
  doc["height"] = height;
  doc["distances"] = distances;
  return doc.dump();
}

void attach_distances(SampleRecord& rec, const std::vector<double>& distances) {
  if (distances.size() != static_cast<std::size_t>(rec.width) * rec.height) {
    throw std::invalid_argument("attach_distances: map size mismatch");
  }
  for (LabeledObject& o : rec.objects) {
    const int cx = std::clamp(
        static_cast<int>((o.bbox.xmin + o.bbox.xmax) / 2.0), 0, rec.width - 1);
    const int cy = std::clamp(
        static_cast<int>((o.bbox.ymin + o.bbox.ymax) / 2.0), 0, rec.height - 1);
    o.distance_m = distances[static_cast<std::size_t>(cy) * rec.width + cx];
  }
}

void SelectionQuery::validate() const {
  if (active_classes.empty()) {
    throw std::invalid_argument("SelectionQuery: active classes must be non-empty");
  }
  for (int c : active_classes) {
    class_from_index(c);  // throws on a bad index
  }
  if (max_num_people < 0) {
    throw std::invalid_argument("SelectionQuery: max people must be >= 0");
  }
  if (!(max_dist_m > 0.0)) {
    throw std::invalid_argument("SelectionQuery: max distance must be > 0");
  }
}

std::vector<SampleRecord> select(const std::vector<SampleRecord>& records,
                                 const SelectionQuery& q) {
  q.validate();
  std::vector<SampleRecord> out;
  for (const SampleRecord& rec : records) {
    bool class_ok;
    if (q.strict_classes) {
      // vacuously true for empty records, so enabling every class is a no-op
      class_ok = std::all_of(rec.objects.begin(), rec.objects.end(),
                             [&](const LabeledObject& o) {
                               return q.active_classes.count(class_index(o.cls)) > 0;
                             });
    } else {
      class_ok = std::all_of(q.active_classes.begin(), q.active_classes.end(),
                             [&](int c) {
                               return rec.has_class(class_from_index(c));
                             });
    }
    if (!class_ok) continue;
    if (rec.person_count() > q.max_num_people) continue;
    if (rec.max_object_distance() > q.max_dist_m) continue;
    out.push_back(rec);
  }
  return out;
}

void CropSpec::validate() const {
  person_bbox.validate();
  if (!(out_w > 0.0) || !(out_h > 0.0)) {
    throw std::invalid_argument("CropSpec: output size must be positive");
  }
}

BBox crop_transform(const BBox& obj_bbox, const CropSpec& crop) {
  crop.validate();
  obj_bbox.validate();
  const BBox& p = crop.person_bbox;
  const bool disjoint = obj_bbox.xmax <= p.xmin || obj_bbox.xmin >= p.xmax ||
                        obj_bbox.ymax <= p.ymin || obj_bbox.ymin >= p.ymax;
  if (disjoint) {
    throw std::invalid_argument("crop_transform: box does not intersect crop");
  }
  auto map_x = [&](double x) {
    return std::clamp((x - p.xmin) * crop.out_w / p.width(), 0.0, crop.out_w);
  };
  auto map_y = [&](double y) {
    return std::clamp((y - p.ymin) * crop.out_h / p.height(), 0.0, crop.out_h);
  };
  return {map_x(obj_bbox.xmin), map_y(obj_bbox.ymin), map_x(obj_bbox.xmax),
          map_y(obj_bbox.ymax)};
}

std::vector<std::array<double, 2>> ground_truth_scores(
    const std::vector<BBox>& pred_boxes, const std::vector<BBox>& gt_phone_boxes,
    double iou_threshold) {
  if (pred_boxes.empty()) {
    throw std::invalid_argument("ground_truth_scores: need at least one box");
  }
  std::vector<std::array<double, 2>> rows;
  rows.reserve(pred_boxes.size());
  for (const BBox& pred : pred_boxes) {
    double best = 0.0;
    for (const BBox& gt : gt_phone_boxes) best = std::max(best, iou(pred, gt));
    rows.push_back(best >= iou_threshold ? std::array<double, 2>{1.0, 0.0}
                                         : std::array<double, 2>{0.0, 1.0});
  }
  return rows;
}

std::vector<TrainingCrop> make_training_crops(const SampleRecord& rec,
                                              double out_w, double out_h) {
  std::vector<TrainingCrop> crops;
  int index = 0;
  for (const LabeledObject& person : rec.objects) {
    if (person.cls != ObjectClass::Person) continue;
    for (const LabeledObject& phone : rec.objects) {
      if (phone.cls != ObjectClass::CellPhone) continue;
      const bool overlaps = phone.bbox.xmin < person.bbox.xmax &&
                            phone.bbox.xmax > person.bbox.xmin &&
                            phone.bbox.ymin < person.bbox.ymax &&
                            phone.bbox.ymax > person.bbox.ymin;
      if (!overlaps) continue;
      TrainingCrop crop;
      crop.record_id = rec.id;
      crop.crop_index = index++;
      crop.person_bbox = person.bbox;
      crop.phone_bbox = phone.bbox;
      crop.phone_bbox_cropped =
          crop_transform(phone.bbox, CropSpec{person.bbox, out_w, out_h});
      crops.push_back(crop);
    }
  }
  return crops;
}

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open file: " + p.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

std::vector<SampleRecord> load_corpus(const std::filesystem::path& root) {
  const std::filesystem::path label_dir = root / "label";
  const std::filesystem::path dist_dir = root / "image" / "distance";
  if (!std::filesystem::is_directory(label_dir)) {
    throw std::runtime_error("corpus: missing label directory: " +
                             label_dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(label_dir)) {
    if (entry.path().extension() == ".xml") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<SampleRecord> out;
  out.reserve(files.size());
  for (const auto& file : files) {
    SampleRecord rec = parse_label_file(read_file(file));
    rec.id = file.stem().string();
    const std::filesystem::path dist = dist_dir / (rec.id + ".json");
    if (std::filesystem::exists(dist)) {
      rec.distance_ref = dist.string();
      attach_distances(rec,
                       parse_distance_file(read_file(dist), rec.width, rec.height));
    }
    out.push_back(std::move(rec));
  }
  return out;
}

void write_corpus_record(const std::filesystem::path& root,
                         const SampleRecord& rec,
                         const std::vector<double>& distances) {
  const std::filesystem::path label_dir = root / "label";
  const std::filesystem::path dist_dir = root / "image" / "distance";
  std::filesystem::create_directories(label_dir);
  std::filesystem::create_directories(dist_dir);
  // full corpus layout; the imagery folders stay empty here
  std::filesystem::create_directories(root / "image" / "rgb");
  std::filesystem::create_directories(root / "image" / "depth");
  {
    std::ofstream out(label_dir / (rec.id + ".xml"), std::ios::binary);
    out << serialize_label_file(rec);
  }
  {
    std::ofstream out(dist_dir / (rec.id + ".json"), std::ios::binary);
    out << serialize_distance_file(distances, rec.width, rec.height);
  }
}

std::vector<SampleRecord> make_synthetic_corpus(
    const std::filesystem::path& root, std::size_t count, Rng& rng) {
  std::vector<SampleRecord> records;
  records.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    Rng r = rng.fork(k);
    SampleRecord rec;
    {
      std::ostringstream id;
      id << "sample_" << std::setw(5) << std::setfill('0') << k;
      rec.id = id.str();
    }
    rec.width = 640;
    rec.height = 480;
    rec.channels = 3;
    const double base_dist = r.uniform(1.0, 40.0);
    std::vector<double> distances(
        static_cast<std::size_t>(rec.width) * rec.height, base_dist);
    const int persons = static_cast<int>(r.uniform(0.0, 9.0));
    for (int i = 0; i < persons; ++i) {
      const double w = r.uniform(40.0, 160.0);
      const double h = r.uniform(80.0, 240.0);
      const double x = r.uniform(0.0, rec.width - w);
      const double y = r.uniform(0.0, rec.height - h);
      rec.objects.push_back({ObjectClass::Person, {x, y, x + w, y + h}, 0.0});
      if (r.uniform() < 0.7) {  // phone carried by this person
        const double pw = std::min(w / 3.0, 30.0), ph = std::min(h / 4.0, 30.0);
        const double px = r.uniform(x, x + w - pw);
        const double py = r.uniform(y, y + h - ph);
        rec.objects.push_back(
            {ObjectClass::CellPhone, {px, py, px + pw, py + ph}, 0.0});
      }
    }
    if (r.uniform() < 0.3) {
      const double w = r.uniform(40.0, 120.0), h = r.uniform(30.0, 80.0);
      const double x = r.uniform(0.0, rec.width - w);
      const double y = r.uniform(0.0, rec.height - h);
      rec.objects.push_back({ObjectClass::Laptop, {x, y, x + w, y + h}, 0.0});
    }
    // vary per-object distances around the scene baseline
    for (std::size_t i = 0; i < rec.objects.size(); ++i) {
      const BBox& b = rec.objects[i].bbox;
      const int cx = std::clamp(static_cast<int>((b.xmin + b.xmax) / 2.0), 0,
                                rec.width - 1);
      const int cy = std::clamp(static_cast<int>((b.ymin + b.ymax) / 2.0), 0,
                                rec.height - 1);
      distances[static_cast<std::size_t>(cy) * rec.width + cx] =
          std::max(0.5, base_dist + r.uniform(-0.5, 0.5));
    }
    attach_distances(rec, distances);
    write_corpus_record(root, rec, distances);
    rec.distance_ref =
        (root / "image" / "distance" / (rec.id + ".json")).string();
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace vbmsim::dataset
