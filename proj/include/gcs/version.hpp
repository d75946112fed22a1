#pragma once

#define GCS_VERSION "0.1.0"
