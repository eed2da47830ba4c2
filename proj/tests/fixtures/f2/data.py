filler_value_1 = 1
filler_value_2 = 2
filler_value_3 = 3
filler_value_4 = 4
filler_value_5 = 5
filler_value_6 = 6
filler_value_7 = 7
filler_value_8 = 8
filler_value_9 = 9
filler_value_10 = 10
filler_value_11 = 11
filler_value_12 = 12
filler_value_13 = 13
filler_value_14 = 14
filler_value_15 = 15
filler_value_16 = 16
filler_value_17 = 17
filler_value_18 = 18
filler_value_19 = 19
filler_value_20 = 20
filler_value_21 = 21
filler_value_22 = 22
filler_value_23 = 23
filler_value_24 = 24
filler_value_25 = 25
filler_value_26 = 26
filler_value_27 = 27
filler_value_28 = 28
filler_value_29 = 29
filler_value_30 = 30
filler_value_31 = 31
filler_value_32 = 32
filler_value_33 = 33
filler_value_34 = 34
filler_value_35 = 35
filler_value_36 = 36
filler_value_37 = 37
filler_value_38 = 38
filler_value_39 = 39
filler_value_40 = 40
filler_value_41 = 41
filler_value_42 = 42
filler_value_43 = 43
filler_value_44 = 44
filler_value_45 = 45
filler_value_46 = 46
filler_value_47 = 47
filler_value_48 = 48
filler_value_49 = 49
filler_value_50 = 50
filler_value_51 = 51
filler_value_52 = 52
filler_value_53 = 53
filler_value_54 = 54
filler_value_55 = 55
filler_value_56 = 56
filler_value_57 = 57
filler_value_58 = 58
filler_value_59 = 59
filler_value_60 = 60
filler_value_61 = 61
filler_value_62 = 62
filler_value_63 = 63
filler_value_64 = 64
filler_value_65 = 65
filler_value_66 = 66
filler_value_67 = 67
filler_value_68 = 68
filler_value_69 = 69
filler_value_70 = 70
filler_value_71 = 71
filler_value_72 = 72
filler_value_73 = 73
filler_value_74 = 74
filler_value_75 = 75
filler_value_76 = 76
filler_value_77 = 77
filler_value_78 = 78
filler_value_79 = 79
filler_value_80 = 80
filler_value_81 = 81
filler_value_82 = 82
filler_value_83 = 83
filler_value_84 = 84
filler_value_85 = 85
filler_value_86 = 86
filler_value_87 = 87
filler_value_88 = 88
filler_value_89 = 89
filler_value_90 = 90
filler_value_91 = 91
filler_value_92 = 92
filler_value_93 = 93
filler_value_94 = 94
filler_value_95 = 95
filler_value_96 = 96
filler_value_97 = 97
filler_value_98 = 98
filler_value_99 = 99
filler_value_100 = 100
filler_value_101 = 101
filler_value_102 = 102
filler_value_103 = 103
filler_value_104 = 104
filler_value_105 = 105
filler_value_106 = 106
filler_value_107 = 107
filler_value_108 = 108
filler_value_109 = 109
filler_value_110 = 110
filler_value_111 = 111
filler_value_112 = 112
filler_value_113 = 113
filler_value_114 = 114
filler_value_115 = 115
filler_value_116 = 116
filler_value_117 = 117
filler_value_118 = 118
filler_value_119 = 119
filler_value_120 = 120
filler_value_121 = 121
filler_value_122 = 122
filler_value_123 = 123
filler_value_124 = 124
filler_value_125 = 125
filler_value_126 = 126
filler_value_127 = 127
filler_value_128 = 128
filler_value_129 = 129
filler_value_130 = 130
filler_value_131 = 131
filler_value_132 = 132
filler_value_133 = 133
filler_value_134 = 134
filler_value_135 = 135
filler_value_136 = 136
filler_value_137 = 137
filler_value_138 = 138
filler_value_139 = 139
filler_value_140 = 140
filler_value_141 = 141
filler_value_142 = 142
filler_value_143 = 143
filler_value_144 = 144
filler_value_145 = 145
filler_value_146 = 146
filler_value_147 = 147
filler_value_148 = 148
filler_value_149 = 149
filler_value_150 = 150
filler_value_151 = 151
filler_value_152 = 152
filler_value_153 = 153
filler_value_154 = 154
filler_value_155 = 155
filler_value_156 = 156
filler_value_157 = 157
filler_value_158 = 158
filler_value_159 = 159
filler_value_160 = 160
filler_value_161 = 161
filler_value_162 = 162
filler_value_163 = 163
filler_value_164 = 164
filler_value_165 = 165
filler_value_166 = 166
filler_value_167 = 167
filler_value_168 = 168
filler_value_169 = 169
filler_value_170 = 170
filler_value_171 = 171
filler_value_172 = 172
filler_value_173 = 173
filler_value_174 = 174
filler_value_175 = 175
filler_value_176 = 176
filler_value_177 = 177
filler_value_178 = 178
filler_value_179 = 179
filler_value_180 = 180
filler_value_181 = 181
filler_value_182 = 182
filler_value_183 = 183
filler_value_184 = 184
filler_value_185 = 185
filler_value_186 = 186
filler_value_187 = 187
filler_value_188 = 188
filler_value_189 = 189
filler_value_190 = 190
filler_value_191 = 191
filler_value_192 = 192
filler_value_193 = 193
filler_value_194 = 194
filler_value_195 = 195
filler_value_196 = 196
filler_value_197 = 197
filler_value_198 = 198
filler_value_199 = 199
filler_value_200 = 200
filler_value_201 = 201
filler_value_202 = 202
filler_value_203 = 203
filler_value_204 = 204
filler_value_205 = 205
filler_value_206 = 206
filler_value_207 = 207
filler_value_208 = 208
filler_value_209 = 209
filler_value_210 = 210
filler_value_211 = 211
filler_value_212 = 212
filler_value_213 = 213
filler_value_214 = 214
filler_value_215 = 215
filler_value_216 = 216
filler_value_217 = 217
filler_value_218 = 218
filler_value_219 = 219
filler_value_220 = 220
filler_value_221 = 221
filler_value_222 = 222
filler_value_223 = 223
filler_value_224 = 224
filler_value_225 = 225
filler_value_226 = 226
filler_value_227 = 227
filler_value_228 = 228
filler_value_229 = 229
filler_value_230 = 230
filler_value_231 = 231
filler_value_232 = 232
filler_value_233 = 233
filler_value_234 = 234
filler_value_235 = 235
filler_value_236 = 236
filler_value_237 = 237
filler_value_238 = 238
filler_value_239 = 239
filler_value_240 = 240
filler_value_241 = 241
filler_value_242 = 242
filler_value_243 = 243
filler_value_244 = 244
filler_value_245 = 245
filler_value_246 = 246
filler_value_247 = 247
filler_value_248 = 248
filler_value_249 = 249
filler_value_250 = 250
filler_value_251 = 251
filler_value_252 = 252
filler_value_253 = 253
filler_value_254 = 254
filler_value_255 = 255
filler_value_256 = 256
filler_value_257 = 257
filler_value_258 = 258
filler_value_259 = 259
filler_value_260 = 260
filler_value_261 = 261
filler_value_262 = 262
filler_value_263 = 263
filler_value_264 = 264
filler_value_265 = 265
filler_value_266 = 266
filler_value_267 = 267
filler_value_268 = 268
filler_value_269 = 269
filler_value_270 = 270
filler_value_271 = 271
filler_value_272 = 272
filler_value_273 = 273
filler_value_274 = 274
filler_value_275 = 275
filler_value_276 = 276
filler_value_277 = 277
filler_value_278 = 278
filler_value_279 = 279
filler_value_280 = 280
filler_value_281 = 281
filler_value_282 = 282
filler_value_283 = 283
filler_value_284 = 284
filler_value_285 = 285
filler_value_286 = 286
filler_value_287 = 287
filler_value_288 = 288
filler_value_289 = 289
filler_value_290 = 290
filler_value_291 = 291
filler_value_292 = 292
filler_value_293 = 293
filler_value_294 = 294
filler_value_295 = 295
filler_value_296 = 296
filler_value_297 = 297
filler_value_298 = 298
filler_value_299 = 299
filler_value_300 = 300
filler_value_301 = 301
filler_value_302 = 302
filler_value_303 = 303
filler_value_304 = 304
filler_value_305 = 305
filler_value_306 = 306
filler_value_307 = 307
filler_value_308 = 308
filler_value_309 = 309
filler_value_310 = 310
filler_value_311 = 311
filler_value_312 = 312
filler_value_313 = 313
filler_value_314 = 314
filler_value_315 = 315
filler_value_316 = 316
filler_value_317 = 317
filler_value_318 = 318
filler_value_319 = 319
filler_value_320 = 320
filler_value_321 = 321
filler_value_322 = 322
filler_value_323 = 323
filler_value_324 = 324
filler_value_325 = 325
filler_value_326 = 326
filler_value_327 = 327
filler_value_328 = 328
filler_value_329 = 329
filler_value_330 = 330
filler_value_331 = 331
filler_value_332 = 332
filler_value_333 = 333
filler_value_334 = 334
filler_value_335 = 335
filler_value_336 = 336
filler_value_337 = 337
filler_value_338 = 338
filler_value_339 = 339
filler_value_340 = 340
filler_value_341 = 341
filler_value_342 = 342
filler_value_343 = 343
filler_value_344 = 344
filler_value_345 = 345
filler_value_346 = 346
filler_value_347 = 347
filler_value_348 = 348
filler_value_349 = 349
filler_value_350 = 350
filler_value_351 = 351
filler_value_352 = 352
filler_value_353 = 353
filler_value_354 = 354
filler_value_355 = 355
filler_value_356 = 356
filler_value_357 = 357
filler_value_358 = 358
filler_value_359 = 359
filler_value_360 = 360
filler_value_361 = 361
filler_value_362 = 362
filler_value_363 = 363
filler_value_364 = 364
filler_value_365 = 365
filler_value_366 = 366
filler_value_367 = 367
filler_value_368 = 368
filler_value_369 = 369
filler_value_370 = 370
filler_value_371 = 371
filler_value_372 = 372
filler_value_373 = 373
filler_value_374 = 374
filler_value_375 = 375
filler_value_376 = 376
filler_value_377 = 377
filler_value_378 = 378
filler_value_379 = 379
filler_value_380 = 380
filler_value_381 = 381
filler_value_382 = 382
filler_value_383 = 383
filler_value_384 = 384
filler_value_385 = 385
filler_value_386 = 386
filler_value_387 = 387
filler_value_388 = 388
filler_value_389 = 389
filler_value_390 = 390
filler_value_391 = 391
filler_value_392 = 392
filler_value_393 = 393
filler_value_394 = 394
filler_value_395 = 395
filler_value_396 = 396
filler_value_397 = 397
filler_value_398 = 398
filler_value_399 = 399
filler_value_400 = 400
filler_value_401 = 401
filler_value_402 = 402
filler_value_403 = 403
filler_value_404 = 404
filler_value_405 = 405
filler_value_406 = 406
filler_value_407 = 407
filler_value_408 = 408
filler_value_409 = 409
filler_value_410 = 410
filler_value_411 = 411
filler_value_412 = 412
filler_value_413 = 413
filler_value_414 = 414
filler_value_415 = 415
filler_value_416 = 416
filler_value_417 = 417
filler_value_418 = 418
filler_value_419 = 419
filler_value_420 = 420
filler_value_421 = 421
filler_value_422 = 422
filler_value_423 = 423
filler_value_424 = 424
filler_value_425 = 425
filler_value_426 = 426
filler_value_427 = 427
filler_value_428 = 428
filler_value_429 = 429
filler_value_430 = 430
filler_value_431 = 431
filler_value_432 = 432
filler_value_433 = 433
filler_value_434 = 434
filler_value_435 = 435
filler_value_436 = 436
filler_value_437 = 437
filler_value_438 = 438
filler_value_439 = 439
filler_value_440 = 440
filler_value_441 = 441
filler_value_442 = 442
filler_value_443 = 443
filler_value_444 = 444
filler_value_445 = 445
filler_value_446 = 446
filler_value_447 = 447
filler_value_448 = 448
filler_value_449 = 449
filler_value_450 = 450
