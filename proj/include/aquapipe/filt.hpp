// Umbrella header for the filtering module.
#pragma once

#include <aquapipe/filt/frequency.hpp>
#include <aquapipe/filt/noise.hpp>
#include <aquapipe/filt/spatial.hpp>
#include <aquapipe/filt/wavelet.hpp>
#include <aquapipe/filt/wgaf.hpp>
