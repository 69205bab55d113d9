#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "va/common.hpp"

namespace va {

enum class ViewLabel { Wide, Narrow };
enum class Region { Asia, Europe, Americas };
enum class PhotoSource { Flickr, Tripadvisor, Yfcc100m, Synthetic };
enum class Split { Train, Val };

std::string to_string(ViewLabel v);
std::string to_string(Region r);
std::string to_string(PhotoSource s);
ViewLabel view_label_from_string(const std::string& s);
Region region_from_string(const std::string& s);
PhotoSource source_from_string(const std::string& s);

struct TouristSite {
  std::string site_id;
  std::string name;
  Region region = Region::Asia;
  double rating = 0.0;   // 0..10 scale
  double size_m = 1.0;   // (0, 1000]
  long vote_count = 0;
  double latitude = 0.0;
  double longitude = 0.0;
};

enum class SiteCriterion { Objectivity, RatingRange, SizeCap };

struct CriterionViolation {
  SiteCriterion criterion;
  std::string message;
};

std::string to_string(SiteCriterion c);

// Empty result means the site satisfies the selection rules: at least 1500
// votes, rating within the 0..10 scale and size in (0, 1000] metres.
std::vector<CriterionViolation> validate_site(const TouristSite& site);

struct PhotoRecord {
  std::string photo_id;
  std::string site_id;  // empty = absent (random-set photos)
  std::string image_path;
  PhotoSource source = PhotoSource::Synthetic;
  bool is_selfie = false;
  bool is_duplicate = false;
  bool is_noise = false;
  std::optional<ViewLabel> true_label;
};

struct DatasetManifest {
  std::string name;
  std::vector<PhotoRecord> records;
  std::map<std::string, Split> split;  // photo_id -> split, optional

  bool has_split() const { return !split.empty(); }
  // Throws ValidationError unless split keys partition exactly the record ids.
  void check_split_partition() const;
};

struct RejectedLine {
  long line_no;
  std::string reason;
};

struct ManifestLoadResult {
  DatasetManifest manifest;
  std::vector<RejectedLine> rejected;
};

// Line-delimited manifest, one record per line, fields in order:
//   photo_id,site_id,image_path,source,is_selfie,is_duplicate,is_noise,true_label
// site_id and true_label may be empty.  Relative image paths are resolved
// against the manifest's directory.  When check_paths is set, records whose
// image file does not exist are rejected (reported, not fatal); structural
// problems (bad field count, unknown enum, duplicate id) throw.
ManifestLoadResult load_manifest(const std::string& path, bool check_paths = true);
void write_manifest(const std::string& path, const DatasetManifest& manifest);

struct RectifySummary {
  long removed_selfie = 0;
  long removed_duplicate = 0;
  long removed_noise = 0;
  long kept = 0;
  long total() const { return removed_selfie + removed_duplicate + removed_noise; }
};

// Keeps exactly the records with all three flags false, preserving order.
DatasetManifest rectify(const DatasetManifest& manifest, RectifySummary* summary = nullptr);

// Site registry: header line
//   site_id,name,region,rating,size_m,vote_count,lat,lon
std::vector<TouristSite> load_site_registry(const std::string& path);
void write_site_registry(const std::string& path, const std::vector<TouristSite>& sites);

}  // namespace va
