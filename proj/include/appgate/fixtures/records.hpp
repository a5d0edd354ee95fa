// Copyright 2026 The appgate Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <random>

#include <appgate/registry/app_record.hpp>

namespace appgate::fixtures {

//! Realistic field sizes: reverse-domain package names, dotted versions, 4-20 byte serials,
//! market page URLs with an id path.
registry::AppRecord random_record(std::mt19937_64& rng);

//! A fixed mid-size record ("com.tencent.mobileqq" style) for single-upload gas figures.
registry::AppRecord typical_record();

}  // namespace appgate::fixtures
