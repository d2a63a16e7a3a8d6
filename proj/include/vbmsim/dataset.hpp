// Copyright (C) 2026 vbmsim contributors
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vbmsim/rng.hpp"

namespace vbmsim::dataset {

enum class ObjectClass { Person, CellPhone, Laptop };

// Class indices used by selection queries: 0 person, 1 cell phone, 2 laptop.
int class_index(ObjectClass c);
ObjectClass class_from_index(int idx);
// Label-file tags: "person", "P" (cell phone), "L" (laptop).
const char* class_tag(ObjectClass c);
std::optional<ObjectClass> class_from_tag(const std::string& tag);

struct BBox {
  double xmin = 0.0, ymin = 0.0, xmax = 0.0, ymax = 0.0;

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  double area() const { return width() * height(); }
  void validate() const;  // xmin < xmax, ymin < ymax
};

double iou(const BBox& a, const BBox& b);

struct LabeledObject {
  ObjectClass cls = ObjectClass::Person;
  BBox bbox;
  double distance_m = 0.0;  // from the distance map at the box center
};

struct SampleRecord {
  std::string id;
  int width = 0, height = 0, channels = 3;
  std::vector<LabeledObject> objects;
  std::string distance_ref;  // path of the per-pixel distance file

  int person_count() const;
  bool has_class(ObjectClass c) const;
  double max_object_distance() const;  // 0 when there are no objects
};

// VOC-style label document:
//   <annotation><size><width/><height/><depth/></size>
//     <object><name>person|P|L</name>
//       <bndbox><xmin/><ymin/><xmax/><ymax/></bndbox></object>*</annotation>
// Unknown class tags, malformed markup and out-of-bounds boxes are rejected.
// Object distances are left at 0 until attach_distances.
SampleRecord parse_label_file(const std::string& xml_text);
std::string serialize_label_file(const SampleRecord& rec);

// Distance document {"width": W, "height": H, "distances": [row-major m]}.
// Every entry must be a finite non-negative number and the array length must
// be exactly W*H.
std::vector<double> parse_distance_file(const std::string& json_text, int width,
                                        int height);
std::string serialize_distance_file(const std::vector<double>& distances,
                                    int width, int height);

// Fills each object's distance_m with the map value at its box center pixel.
void attach_distances(SampleRecord& rec, const std::vector<double>& distances);

// Sub-dataset selection. Default semantics keep a record iff it contains at
// least one object of every active class; strict_classes instead requires
// every labeled object to belong to an active class (vacuously true for
// empty records, so activating every class filters nothing). Person count
// and the distance to the farthest object are bounded in both modes.
struct SelectionQuery {
  std::set<int> active_classes{0, 1};
  int max_num_people = 6;
  double max_dist_m = 30.0;
  bool strict_classes = false;

  void validate() const;
  static constexpr int kUnlimitedPeople = 1 << 30;
};

std::vector<SampleRecord> select(const std::vector<SampleRecord>& records,
                                 const SelectionQuery& q);

// Person-box crop used to build training inputs: pixel coordinates map to a
// resized output frame.
struct CropSpec {
  BBox person_bbox;
  double out_w = 512.0, out_h = 512.0;

  void validate() const;
};

// Object box in the cropped frame, clamped to the output bounds. The object
// must intersect the person box.
BBox crop_transform(const BBox& obj_bbox, const CropSpec& crop);

// Ground-truth class score rows for predicted boxes: (1,0) when a prediction
// overlaps some phone box with IoU >= threshold, else (0,1).
std::vector<std::array<double, 2>> ground_truth_scores(
    const std::vector<BBox>& pred_boxes, const std::vector<BBox>& gt_phone_boxes,
    double iou_threshold = 0.5);

// One fine-tuning input: a person box holding a cell phone, with the phone
// box mapped into the resized crop frame.
struct TrainingCrop {
  std::string record_id;
  int crop_index = 0;
  BBox person_bbox;
  BBox phone_bbox;          // original frame
  BBox phone_bbox_cropped;  // cropped frame
};

// Steps 1-2 of the training-label pipeline: crop every person box that
// overlaps a cell phone box and transform the phone coordinates into the
// cropped frame.
std::vector<TrainingCrop> make_training_crops(const SampleRecord& rec,
                                              double out_w, double out_h);

// Corpus layout (relative to a root directory):
//   label/<id>.xml            annotations
//   image/distance/<id>.json  per-pixel distances
//   image/rgb, image/depth    imagery (not consumed by this toolkit)
std::vector<SampleRecord> load_corpus(const std::filesystem::path& root);
void write_corpus_record(const std::filesystem::path& root,
                         const SampleRecord& rec,
                         const std::vector<double>& distances);

// Deterministic synthetic corpus for tests and demos: count records with
// random person/phone/laptop layouts. Returns the generated records.
std::vector<SampleRecord> make_synthetic_corpus(
    const std::filesystem::path& root, std::size_t count, Rng& rng);

}  // namespace vbmsim::dataset
