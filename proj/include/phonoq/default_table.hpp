// Copyright 2026 phonoq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string_view>

namespace phonoq {

// Built-in copy of the bundled feature table (data/feature_table.tsv keeps
// the identical bytes; a test enforces that they stay in sync).
inline constexpr std::string_view kDefaultTableRaw = R"TSV(
# phonoq feature table
# version=1
# columns: phone manner height backness place voicing, tab separated.
# "-" marks an inactive cell (for consonant place: unspecified).
phone	manner	height	backness	place	voicing
sil	silence	-	-	-	-
# stops
p	stop	-	-	labial	voiceless
b	stop	-	-	labial	voiced
t	stop	-	-	alveolar	voiceless
d	stop	-	-	alveolar	voiced
k	stop	-	-	velar	voiceless
g	stop	-	-	velar	voiced
c	stop	-	-	palatal	voiceless
ɟ	stop	-	-	palatal	voiced
ʔ	stop	-	-	-	voiceless
# nasals
m	nasal	-	-	labial	voiced
n	nasal	-	-	alveolar	voiced
ŋ	nasal	-	-	velar	voiced
ɲ	nasal	-	-	palatal	voiced
# rhotics (uvular variants carry the nearest dorsal place, velar)
r	rhotic	-	-	alveolar	voiced
ɾ	rhotic	-	-	alveolar	voiced
ɹ	rhotic	-	-	alveolar	voiced
r̝	rhotic	-	-	alveolar	voiced
ʀ	rhotic	-	-	velar	voiced
ʁ	rhotic	-	-	velar	voiced
# fricatives (dentals carry alveolar; glottals have unspecified place)
f	fricative	-	-	labial	voiceless
v	fricative	-	-	labial	voiced
β	fricative	-	-	labial	voiced
θ	fricative	-	-	alveolar	voiceless
ð	fricative	-	-	alveolar	voiced
s	fricative	-	-	alveolar	voiceless
z	fricative	-	-	alveolar	voiced
ʃ	fricative	-	-	postalveolar	voiceless
ʒ	fricative	-	-	postalveolar	voiced
ʂ	fricative	-	-	postalveolar	voiceless
ʐ	fricative	-	-	postalveolar	voiced
ç	fricative	-	-	palatal	voiceless
ʝ	fricative	-	-	palatal	voiced
ɕ	fricative	-	-	palatal	voiceless
ʑ	fricative	-	-	palatal	voiced
x	fricative	-	-	velar	voiceless
ɣ	fricative	-	-	velar	voiced
χ	fricative	-	-	velar	voiceless
h	fricative	-	-	-	voiceless
ɦ	fricative	-	-	-	voiced
# affricates (place follows the fricative component)
ts	affricate	-	-	alveolar	voiceless
dz	affricate	-	-	alveolar	voiced
tʃ	affricate	-	-	postalveolar	voiceless
dʒ	affricate	-	-	postalveolar	voiced
tɕ	affricate	-	-	palatal	voiceless
pf	affricate	-	-	labial	voiceless
# approximants
j	approximant	-	-	palatal	voiced
w	approximant	-	-	labial	voiced
ʋ	approximant	-	-	labial	voiced
ɥ	approximant	-	-	palatal	voiced
# laterals
l	lateral	-	-	alveolar	voiced
ɫ	lateral	-	-	alveolar	voiced
ʎ	lateral	-	-	palatal	voiced
ʟ	lateral	-	-	velar	voiced
# vowels
i	vowel	high	front	-	voiced
y	vowel	high	front	-	voiced
ɪ	vowel	high	front	-	voiced
ʏ	vowel	high	front	-	voiced
ɨ	vowel	high	central	-	voiced
u	vowel	high	back	-	voiced
ʊ	vowel	high	back	-	voiced
e	vowel	mid	front	-	voiced
ø	vowel	mid	front	-	voiced
ɛ	vowel	mid	front	-	voiced
œ	vowel	mid	front	-	voiced
ə	vowel	mid	central	-	voiced
ɜ	vowel	mid	central	-	voiced
o	vowel	mid	back	-	voiced
ɔ	vowel	mid	back	-	voiced
ʌ	vowel	mid	back	-	voiced
a	vowel	low	central	-	voiced
ɐ	vowel	low	central	-	voiced
æ	vowel	low	front	-	voiced
ɑ	vowel	low	back	-	voiced
ɒ	vowel	low	back	-	voiced
# diphthongs: explicit rows, height/backness from the nucleus
aɪ	vowel	low	central	-	voiced
aʊ	vowel	low	central	-	voiced
au	vowel	low	central	-	voiced
eɪ	vowel	mid	front	-	voiced
eu	vowel	mid	front	-	voiced
ɛu	vowel	mid	front	-	voiced
oʊ	vowel	mid	back	-	voiced
ou	vowel	mid	back	-	voiced
ɔɪ	vowel	mid	back	-	voiced
ɔʏ	vowel	mid	back	-	voiced
# palatalized consonants (ru); the space has no palatalization dimension,
# so each row carries its plain counterpart's features
pʲ	stop	-	-	labial	voiceless
bʲ	stop	-	-	labial	voiced
tʲ	stop	-	-	alveolar	voiceless
dʲ	stop	-	-	alveolar	voiced
kʲ	stop	-	-	velar	voiceless
gʲ	stop	-	-	velar	voiced
fʲ	fricative	-	-	labial	voiceless
vʲ	fricative	-	-	labial	voiced
sʲ	fricative	-	-	alveolar	voiceless
zʲ	fricative	-	-	alveolar	voiced
xʲ	fricative	-	-	velar	voiceless
mʲ	nasal	-	-	labial	voiced
nʲ	nasal	-	-	alveolar	voiced
lʲ	lateral	-	-	alveolar	voiced
rʲ	rhotic	-	-	alveolar	voiced
)TSV";

// The raw literal opens on its own line; drop that leading newline so the
// constant is byte-identical to the data file.
inline constexpr std::string_view default_feature_table_tsv() {
  return kDefaultTableRaw.substr(1);
}

}  // namespace phonoq
