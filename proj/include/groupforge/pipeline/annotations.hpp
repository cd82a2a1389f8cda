// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "groupforge/core/annotation.hpp"

namespace gf {

// Reads every *.json annotation in the directory (sorted by filename) and
// validates it against the schema:
//   { "image": path, "width": int, "height": int,
//     "persons": [ { "id": int, "bbox": [x1,y1,x2,y2],
//                    "keypoints": [[x,y,conf] x17], "parsing": path } ] }
// Image paths resolve against imagesDir (or the annotation's directory when
// imagesDir is empty); parsing paths resolve against the annotation's
// directory and are loaded as 8-bit grayscale class-id maps. Malformed
// files raise SchemaError naming the file and field; missing image or
// parsing files raise MissingImage. An empty directory returns an empty
// list with a warning on stderr.
std::vector<GroupAnnotation> ingest_annotations(const std::string& annotationsDir,
                                                const std::string& imagesDir = "");

// Single-file variant used by ingest_annotations and tests.
GroupAnnotation parse_annotation_file(const std::string& path, const std::string& imagesDir = "");

}  // namespace gf
