#pragma once

#include <string>
#include <vector>

#include "va/annotation.hpp"
#include "va/data.hpp"
#include "va/image.hpp"
#include "va/rng.hpp"

namespace va {

enum class ObjectCategory { Person, Statue, Kiosk, Tree, Building, Mountain };

std::string to_string(ObjectCategory c);
ObjectCategory category_from_string(const std::string& s);
constexpr int kNumCategories = 6;

struct SceneObject {
  ObjectCategory category = ObjectCategory::Person;
  double cx = 0.5;           // center x, fraction of the side
  double base_y = 0.8;       // ground line y, fraction of the side
  double height_frac = 0.3;  // object height as fraction of the side
};

struct SceneSpec {
  int side = 256;
  uint64_t seed = 1;
  bool focus_lens = false;  // sharp center, blurred fringe
  double horizon = 0.52;
  int palette = 0;
  std::vector<SceneObject> objects;
};

Image render_scene(const SceneSpec& spec);

// Scene builders matching the two label semantics: a narrow-angle photo is
// a focus-lens shot of one large central subject; a wide-angle photo is a
// globally sharp scene of small objects.
SceneSpec make_narrow_scene(Rng& rng, int side);
SceneSpec make_wide_scene(Rng& rng, int side);

// Single object on a plain backdrop; used to train the conceptual-size
// category classifier on crops with known labels.
SceneSpec make_object_study(Rng& rng, int side, ObjectCategory category, double height_frac);

struct SynthOptions {
  int n_sites = 0;               // 0 = site-free records (random-set role)
  double flagged_fraction = 0.0; // extra records carrying rectification flags
  bool emit_votes = false;
  int n_raters = 5;
  double vote_fidelity = 0.92;   // P(rater votes the true label)
  PhotoSource source = PhotoSource::Synthetic;
};

struct SynthResult {
  DatasetManifest manifest;
  std::vector<TouristSite> sites;
  std::vector<VoteSheet> votes;
};

// Emits 2*n_per_class clean images (plus flagged extras) under out_dir,
// together with manifest.csv, sites.csv and votes.csv as applicable.
// Byte-identical output for a fixed seed.  When sites are requested, the
// per-site wide proportion rises with the site rating so the downstream
// analysis has signal to find, while overall class balance stays exact.
SynthResult synth_generate(uint64_t seed, int n_per_class, int image_side,
                           const std::string& out_dir, const SynthOptions& opts = {});

}  // namespace va
