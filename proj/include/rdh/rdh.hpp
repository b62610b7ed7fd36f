/**
 * Copyright The rdh-pvo Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "rdh/codec.hpp"
#include "rdh/core.hpp"
#include "rdh/errors.hpp"
#include "rdh/io.hpp"
#include "rdh/oracle.hpp"
#include "rdh/pipeline.hpp"
#include "rdh/random_bits.hpp"
